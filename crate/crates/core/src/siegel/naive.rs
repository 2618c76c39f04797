//! Direct evaluation of `b_p(h, s) = Σ_α e_p(-tr(hα)) ν(α)^{-s}` over
//! `α ∈ p^{-K} S_ℓ(Z_p)/S_ℓ(Z_p)`, with the character values bucketed by
//! exponent and reduced in `Z[ζ_{p^K}]`.

use rayon::prelude::*;

use super::padic::elementary_valuations_mod;
use super::{HalfIntegralMatrix, QPoly};
use crate::arith::{int, ord_p};
use crate::error::{JflError, Result};

/// Largest number of matrices `α` the direct route will enumerate.
pub const NAIVE_BOUND: u64 = 100_000_000;

const BUCKET_BOUND: u64 = 10_000_000;

/// Value of `Σ_j c_j ζ^j` (`ζ` a primitive `p^K`-th root of unity) if it is
/// rational, using the basis `ζ^j`, `j < φ(p^K)`.
pub(crate) fn cyclotomic_rational(c: &[i64], p: u64, k: u32) -> Option<i64> {
    let q = p.pow(k) as usize;
    debug_assert_eq!(c.len(), q);
    if k == 0 {
        return Some(c[0]);
    }
    let step = q / p as usize;
    let top = (p as usize - 1) * step;
    for j in 0..top {
        let r = j % step;
        let reduced = c[j] - c[top + r];
        if j == 0 {
            continue;
        }
        if reduced != 0 {
            return None;
        }
    }
    Some(c[0] - c[top])
}

/// `f_p(h; X)` by direct enumeration at depth `K`, by default
/// `ord_p det(2h) + ℓ + 2`. Coefficients of `X^t` for `t ≤ K` are exact; those
/// of `X^{K-1}` and `X^K` must vanish, otherwise the depth was too small.
pub fn siegel_series_naive(h: &HalfIntegralMatrix, p: u64, depth: Option<u32>) -> Result<QPoly> {
    let l = h.size();
    let det = h.det2h();
    if det == 0 {
        return Err(JflError::InvalidInput("h must be nondegenerate".into()));
    }
    let k = depth.unwrap_or(ord_p(det, p) + l as u32 + 2);
    let m = (l * (l + 1) / 2) as u32;
    let q = p
        .checked_pow(k)
        .ok_or_else(|| JflError::TooLarge(format!("p^K with K = {k}")))?;
    let total = q
        .checked_pow(m)
        .filter(|&t| t <= NAIVE_BOUND)
        .ok_or_else(|| {
            JflError::TooLarge(format!("{p}^({k}·{m}) matrices α exceed {NAIVE_BOUND}"))
        })?;
    if (u64::from(k) + 1) * q > BUCKET_BOUND {
        return Err(JflError::TooLarge(format!(
            "{} character buckets",
            (u64::from(k) + 1) * q
        )));
    }
    let two_h = h.two_h();
    // Pairing weights: tr(hα)·p^K = Σ_i h_ii a_ii + Σ_{i<j} 2h_ij a_ij.
    let mut slots = Vec::with_capacity(m as usize);
    for i in 0..l {
        for j in i..l {
            let w = if i == j { two_h[i][i] / 2 } else { two_h[i][j] };
            slots.push((i, j, w.rem_euclid(q as i64)));
        }
    }
    let qi = q as i64;
    let kk = k as usize;
    let buckets = (0..total)
        .into_par_iter()
        .fold(
            || {
                (
                    vec![vec![0i64; q as usize]; kk + 1],
                    vec![vec![0i128; l]; l],
                )
            },
            |(mut b, mut a), idx| {
                let mut rest = idx;
                let mut expo = 0i64;
                for &(i, j, w) in &slots {
                    let d = (rest % q) as i64;
                    rest /= q;
                    a[i][j] = i128::from(d);
                    a[j][i] = i128::from(d);
                    expo = (expo + w * d) % qi;
                }
                let vals = elementary_valuations_mod(&mut a, i128::from(p), k);
                let t: u32 = vals.iter().map(|&v| k - v).sum();
                if t as usize <= kk {
                    b[t as usize][((qi - expo) % qi) as usize] += 1;
                }
                (b, a)
            },
        )
        .map(|(b, _)| b)
        .reduce(
            || vec![vec![0i64; q as usize]; kk + 1],
            |mut x, y| {
                for (rx, ry) in x.iter_mut().zip(&y) {
                    for (u, v) in rx.iter_mut().zip(ry) {
                        *u += v;
                    }
                }
                x
            },
        );
    let mut out = QPoly::default();
    for (t, b) in buckets.iter().enumerate() {
        let c = cyclotomic_rational(b, p, k).ok_or_else(|| {
            JflError::Inconsistent(format!("coefficient of X^{t} is not rational at p = {p}"))
        })?;
        if c != 0 {
            if k >= 1 && t + 1 >= kk {
                return Err(JflError::Inconsistent(format!(
                    "depth K = {k} too small: coefficient of X^{t} is {c}"
                )));
            }
            out.add_term(t as i64, int(c));
        }
    }
    Ok(out)
}
