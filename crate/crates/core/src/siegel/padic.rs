//! `p`-adic elementary divisors and the denominator `ν(α)`.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::error::{JflError, Result};

fn inv_mod(a: i128, m: i128) -> i128 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

fn val(mut x: i128, p: i128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while v < cap && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn big_ord(n: &BigInt, p: u64) -> i64 {
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &bp).is_zero() {
        n /= &bp;
        v += 1;
    }
    v
}

/// Valuations `min(ord_p d_i, cap)` of the elementary divisors `d_i` of an
/// integer matrix over `Z_p`, computed by pivoting modulo `p^cap`.
#[must_use]
pub fn elementary_valuations(m: &[Vec<i64>], p: u64, cap: u32) -> Vec<u32> {
    let pp = i128::from(p);
    let modulus = pp.pow(cap);
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| i128::from(x).rem_euclid(modulus))
                .collect()
        })
        .collect();
    elementary_valuations_mod(&mut a, pp, cap)
}

pub(crate) fn elementary_valuations_mod(a: &mut [Vec<i128>], p: i128, cap: u32) -> Vec<u32> {
    let n = a.len();
    let modulus = p.pow(cap);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut best = (cap, k, k);
        for i in k..n {
            for j in k..n {
                let v = val(a[i][j], p, cap);
                if v < best.0 {
                    best = (v, i, j);
                }
            }
        }
        let (v, bi, bj) = best;
        if v == cap {
            out.extend(std::iter::repeat_n(cap, n - k));
            return out;
        }
        a.swap(k, bi);
        for row in a.iter_mut() {
            row.swap(k, bj);
        }
        let pv = p.pow(v);
        let unit_inv = inv_mod(a[k][k] / pv, modulus);
        for i in k + 1..n {
            if a[i][k] != 0 {
                let f = (a[i][k] / pv) * unit_inv % modulus;
                for j in k..n {
                    a[i][j] = (a[i][j] - f * a[k][j]).rem_euclid(modulus);
                }
            }
        }
        for j in k + 1..n {
            if a[k][j] != 0 {
                let f = (a[k][j] / pv) * unit_inv % modulus;
                for i in k..n {
                    a[i][j] = (a[i][j] - f * a[i][k]).rem_euclid(modulus);
                }
            }
        }
        out.push(v);
    }
    out
}

/// Exponent `t` with `ν(α) = p^t`: the product of the denominators of the
/// elementary divisors of a symmetric `α` over `Q_p`.
pub fn nu(alpha: &[Vec<Rational>], p: u64) -> Result<u32> {
    let n = alpha.len();
    if alpha.iter().any(|r| r.len() != n) {
        return Err(JflError::InvalidInput("α must be square".into()));
    }
    let big_p = BigInt::from(p);
    let depth = alpha
        .iter()
        .flatten()
        .filter(|x| !x.is_zero())
        .map(|x| big_ord(x.denom(), p))
        .max()
        .unwrap_or(0);
    if depth == 0 {
        return Ok(0);
    }
    let cap = depth as u32;
    if f64::from(cap) * (p as f64).log2() > 60.0 {
        return Err(JflError::TooLarge(format!("denominator p^{cap} of α")));
    }
    let pp = i128::from(p);
    let modulus = pp.pow(cap);
    let big_mod = BigInt::from(modulus);
    let mut a = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = &alpha[i][j];
            if x.is_zero() {
                continue;
            }
            // p^depth·x = num·p^{depth - ord_p den}/unit.
            let dv = big_ord(x.denom(), p);
            let unit = x.denom() / big_p.pow(dv as u32);
            let num = x.numer() * big_p.pow((depth - dv) as u32);
            let u = unit.mod_floor(&big_mod).to_i128().expect("fits");
            let nm = num.mod_floor(&big_mod).to_i128().expect("fits");
            a[i][j] = nm * inv_mod(u, modulus) % modulus;
        }
    }
    let vals = elementary_valuations_mod(&mut a, pp, cap);
    Ok(vals.iter().map(|&v| cap - v).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn smith_valuations() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(elementary_valuations(&m, 2, 10), vec![1, 1, 2]);
        assert_eq!(elementary_valuations(&m, 3, 10), vec![0, 1, 1]);
    }

    #[test]
    fn nu_examples() {
        let a = vec![vec![rat(1, 4), rat(0, 1)], vec![rat(0, 1), rat(1, 2)]];
        assert_eq!(nu(&a, 2).unwrap(), 3);
        let b = vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]];
        assert_eq!(nu(&b, 2).unwrap(), 1);
        assert_eq!(nu(&b, 3).unwrap(), 0);
    }
}
