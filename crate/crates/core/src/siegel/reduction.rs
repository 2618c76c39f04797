//! `f_p(h; X)` through the reduction
//! `b_p(h) = Σ_G (p^{ℓ+1}X²)^{ord_p det G} b_p^{pr}(h[G⁻¹])`, with `G` running
//! over Hermite normal forms in `GL_ℓ(Z_p)\M_ℓ(Z_p)` such that `h[G⁻¹]` stays
//! half-integral. The primitive series depends only on `h mod p`; it is
//! obtained from the level-one sum over `S_ℓ(F_p)` by inverting over the
//! subspaces of the quadratic radical, and cached by isometry class.

use std::collections::HashMap;

use num_traits::{One, ToPrimitive, Zero};

use super::naive::cyclotomic_rational;
use super::{HalfIntegralMatrix, QPoly};
use crate::arith::{int, ord_p, pow_rat, Rational};
use crate::error::{JflError, Result};
use crate::lattice::kernel_mod_p;

const MAXL: usize = 8;

/// Largest level-one enumeration `p^{ℓ(ℓ+1)/2}` attempted.
const LEVEL_ONE_BOUND: u64 = 50_000_000;

/// Isometry-class invariants of a quadratic form over `F_p`: size, dimension
/// of the bilinear radical, and the number of vectors taking each value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ClassKey {
    p: u64,
    ell: usize,
    bil_rad: usize,
    values: Vec<u64>,
}

/// Quadratic form `q(v) = vᵀTv` over `F_p`, stored as `2T` with entries
/// reduced so that `q` is determined (diagonal modulo `2p`).
#[derive(Clone, Debug)]
struct FormModP {
    p: u64,
    two_t: Vec<Vec<i64>>,
}

impl FormModP {
    fn new(p: u64, two_t: &[Vec<i64>]) -> Self {
        let pm = p as i64;
        let two_t = two_t
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, &x)| {
                        if i == j {
                            x.rem_euclid(2 * pm)
                        } else {
                            x.rem_euclid(pm)
                        }
                    })
                    .collect()
            })
            .collect();
        Self { p, two_t }
    }

    fn ell(&self) -> usize {
        self.two_t.len()
    }

    /// Coefficients of `q`: `q(v) = Σ_i d_i v_i² + Σ_{i<j} o_ij v_i v_j`.
    fn diag_coeff(&self, i: usize) -> i64 {
        let p = self.p as i64;
        let t = self.two_t[i][i];
        if p == 2 {
            (t / 2) % 2
        } else {
            t * ((p + 1) / 2) % p
        }
    }

    fn q(&self, v: &[i64]) -> i64 {
        let p = self.p as i64;
        let n = self.ell();
        let mut acc = 0;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            acc += self.diag_coeff(i) * v[i] * v[i];
            for j in i + 1..n {
                acc += self.two_t[i][j] * v[i] * v[j];
            }
        }
        acc.rem_euclid(p)
    }

    /// Gram matrix of the polar form `B(u, v) = q(u+v) - q(u) - q(v)`.
    fn polar(&self) -> Vec<Vec<i64>> {
        let mut b = self.two_t.clone();
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = if self.p == 2 {
                0
            } else {
                2 * self.diag_coeff(i)
            };
        }
        b
    }

    fn key(&self) -> ClassKey {
        let p = self.p;
        let n = self.ell();
        let mut values = vec![0u64; p as usize];
        let mut v = vec![0i64; n];
        loop {
            values[self.q(&v) as usize] += 1;
            let mut i = 0;
            loop {
                if i == n {
                    return ClassKey {
                        p,
                        ell: n,
                        bil_rad: kernel_mod_p(&self.polar(), p).len(),
                        values,
                    };
                }
                v[i] += 1;
                if v[i] < p as i64 {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    /// Basis of `{v : B(v, ·) = 0, q(v) = 0}`.
    fn quadratic_radical(&self) -> Vec<Vec<i64>> {
        let ker = kernel_mod_p(&self.polar(), self.p);
        if self.p != 2 {
            return ker;
        }
        // q is additive on the bilinear radical in characteristic 2.
        let Some(j) = ker.iter().position(|b| self.q(b) == 1) else {
            return ker;
        };
        let pivot = ker[j].clone();
        ker.iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, b)| {
                if self.q(b) == 1 {
                    b.iter().zip(&pivot).map(|(x, y)| (x + y) % 2).collect()
                } else {
                    b.clone()
                }
            })
            .collect()
    }

    /// The induced form on `F_p^ℓ / span(w)` for `w` inside the quadratic
    /// radical, written in a complement spanned by unit vectors.
    fn quotient(&self, w: &[Vec<i64>]) -> Self {
        let n = self.ell();
        let p = self.p;
        let mut span: Vec<Vec<i64>> = w.to_vec();
        let mut cols = Vec::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            let mut trial = span.clone();
            trial.push(e.clone());
            if rank_mod_p(&trial, p) == trial.len() {
                span = trial;
                cols.push(e);
            }
        }
        let m = cols.len();
        let mut out = vec![vec![0i64; m]; m];
        for a in 0..m {
            for b in 0..m {
                let mut acc = 0i64;
                for i in 0..n {
                    for j in 0..n {
                        acc += cols[a][i] * self.two_t[i][j] * cols[b][j];
                    }
                }
                out[a][b] = acc;
            }
        }
        Self::new(p, &out)
    }
}

fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let pm = p as i64;
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..a.len()).find(|&i| a[i][c].rem_euclid(pm) != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = inv_mod_small(a[r][c].rem_euclid(pm), pm);
        for i in 0..a.len() {
            if i != r {
                let f = a[i][c].rem_euclid(pm) * inv % pm;
                if f != 0 {
                    for j in 0..n {
                        a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(pm);
                    }
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

fn inv_mod_small(a: i64, p: i64) -> i64 {
    (1..p).find(|&x| a * x % p == 1).expect("unit")
}

/// Rank of a symmetric matrix over `F_p` held in a fixed array.
fn sym_rank(a: &mut [[u32; MAXL]; MAXL], n: usize, p: u32, inv: &[u32]) -> usize {
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let iv = inv[a[r][c] as usize];
        for i in r + 1..n {
            let x = a[i][c];
            if x != 0 {
                let f = x * iv % p;
                for j in c..n {
                    a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Level-one sum `Σ_{β ∈ S_ℓ(F_p)} e(-tr(Tβ)/p) X^{rank β}`.
fn level_one(form: &FormModP) -> Result<QPoly> {
    let n = form.ell();
    let p = form.p;
    if n == 0 {
        return Ok(QPoly::one());
    }
    if n > MAXL {
        return Err(JflError::TooLarge(format!("level-one sum of size {n}")));
    }
    let m = (n * (n + 1) / 2) as u32;
    let total = p
        .checked_pow(m)
        .filter(|&t| t <= LEVEL_ONE_BOUND)
        .ok_or_else(|| JflError::TooLarge(format!("{p}^{m} level-one terms")))?;
    let p32 = p as u32;
    let mut inv = vec![0u32; p as usize];
    for x in 1..p32 {
        inv[x as usize] = (1..p32).find(|&y| x * y % p32 == 1).expect("unit");
    }
    let mut slots = Vec::with_capacity(m as usize);
    for i in 0..n {
        for j in i..n {
            let w = if i == j {
                form.diag_coeff(i)
            } else {
                form.two_t[i][j]
            };
            slots.push((i, j, w.rem_euclid(p as i64) as u32));
        }
    }
    let mut buckets = vec![vec![0i64; p as usize]; n + 1];
    let mut digits = vec![0u32; m as usize];
    let mut a = [[0u32; MAXL]; MAXL];
    for _ in 0..total {
        let mut expo = 0u32;
        for (s, &(i, j, w)) in slots.iter().enumerate() {
            let d = digits[s];
            a[i][j] = d;
            a[j][i] = d;
            expo += w * d;
        }
        let r = sym_rank(&mut a, n, p32, &inv);
        buckets[r][((p32 - expo % p32) % p32) as usize] += 1;
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p32 {
                break;
            }
            *d = 0;
        }
    }
    let mut out = QPoly::default();
    for (r, b) in buckets.iter().enumerate() {
        let c = cyclotomic_rational(b, p, 1).ok_or_else(|| {
            JflError::Inconsistent(format!("level-one coefficient of X^{r} is not rational"))
        })?;
        if c != 0 {
            out.add_term(r as i64, int(c));
        }
    }
    Ok(out)
}

/// Number of `w`-dimensional subspaces of `F_p^t`.
fn gaussian_binomial(t: usize, w: usize, p: u64) -> Rational {
    let pr = int(p as i64);
    let mut acc = Rational::one();
    for i in 0..w {
        acc =
            acc * (pow_rat(&pr, (t - i) as i64) - int(1)) / (pow_rat(&pr, (i + 1) as i64) - int(1));
    }
    acc
}

/// Exact evaluator of local Siegel series by reduction to primitive
/// densities; primitive series are cached per isometry class over `F_p`.
#[derive(Default)]
pub struct SiegelOracle {
    primitive_cache: HashMap<ClassKey, QPoly>,
}

impl SiegelOracle {
    #[must_use]
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of isometry classes whose primitive series is cached.
    #[must_use]
    pub fn cached_classes(&self) -> usize {
        self.primitive_cache.len()
    }

    fn primitive(&mut self, form: &FormModP) -> Result<QPoly> {
        let n = form.ell();
        if n == 0 {
            return Ok(QPoly::one());
        }
        let key = form.key();
        if let Some(v) = self.primitive_cache.get(&key) {
            return Ok(v.clone());
        }
        let p = form.p;
        let rad = form.quadratic_radical();
        let t = rad.len();
        let tri = |l: usize| (l * (l + 1) / 2) as i64;
        let pr = int(p as i64);
        let mut res = level_one(form)?;
        for w in 1..=t {
            let sub = self.primitive(&form.quotient(&rad[..w]))?;
            let c = gaussian_binomial(t, w, p) * pow_rat(&pr, tri(n) - tri(n - w));
            res = res - sub.shift(2 * w as i64).scale(&c);
        }
        self.primitive_cache.insert(key, res.clone());
        Ok(res)
    }

    /// `b_p^{pr}(h; X)` for a symmetric `2h` whose diagonal is even when
    /// `p = 2`.
    pub fn primitive_series(&mut self, two_h: &[Vec<i64>], p: u64) -> Result<QPoly> {
        self.primitive(&FormModP::new(p, two_h))
    }

    /// `f_p(h; X)`, the Siegel series `b_p(h, s)` at `X = p^{-s}`.
    pub fn f_p(&mut self, h: &HalfIntegralMatrix, p: u64) -> Result<QPoly> {
        let l = h.size();
        let det = h.det2h();
        if det == 0 {
            return Err(JflError::InvalidInput("h must be nondegenerate".into()));
        }
        let budget = ord_p(det, p) / 2;
        let two_h: Vec<Vec<Rational>> = h
            .two_h()
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        let pr = int(p as i64);
        let weight = QPoly::monomial(pow_rat(&pr, l as i64 + 1), 2);
        let mut total = QPoly::zero();
        let mut exps = vec![0u32; l];
        loop {
            let used: u32 = exps.iter().sum();
            if used <= budget {
                self.sum_offdiagonal(&two_h, &exps, p, &weight.pow(u64::from(used)), &mut total)?;
            }
            let mut i = 0;
            loop {
                if i == l {
                    return Ok(total);
                }
                exps[i] += 1;
                if exps.iter().sum::<u32>() <= budget {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Adds the terms of all Hermite normal forms with diagonal `p^{e_i}`.
    fn sum_offdiagonal(
        &mut self,
        two_h: &[Vec<Rational>],
        exps: &[u32],
        p: u64,
        weight: &QPoly,
        total: &mut QPoly,
    ) -> Result<()> {
        let l = exps.len();
        // Entry (i, j), i < j, ranges over 0..p^{e_j}.
        let slots: Vec<(usize, usize, i64)> = (0..l)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| (i, j, (p as i64).pow(exps[j])))
            .filter(|&(_, _, m)| m > 1)
            .collect();
        let mut digits = vec![0i64; slots.len()];
        loop {
            let mut g = vec![vec![int(0); l]; l];
            for i in 0..l {
                g[i][i] = int((p as i64).pow(exps[i]));
            }
            for (s, &(i, j, _)) in slots.iter().enumerate() {
                g[i][j] = int(digits[s]);
            }
            if let Some(t) = reduced_form(two_h, &g, p) {
                let prim = self.primitive(&FormModP::new(p, &t))?;
                *total = &*total + &(weight * &prim);
            }
            let mut s = 0;
            loop {
                if s == slots.len() {
                    return Ok(());
                }
                digits[s] += 1;
                if digits[s] < slots[s].2 {
                    break;
                }
                digits[s] = 0;
                s += 1;
            }
        }
    }
}

/// `2h[G⁻¹] = G^{-T}(2h)G⁻¹` if `h[G⁻¹]` is half-integral over `Z_p`.
fn reduced_form(two_h: &[Vec<Rational>], g: &[Vec<Rational>], p: u64) -> Option<Vec<Vec<i64>>> {
    let l = g.len();
    // Invert the upper-triangular G by back substitution.
    let mut inv = vec![vec![int(0); l]; l];
    for c in 0..l {
        for i in (0..l).rev() {
            let mut acc = if i == c { int(1) } else { int(0) };
            for k in i + 1..l {
                acc -= &g[i][k] * &inv[k][c];
            }
            inv[i][c] = acc / &g[i][i];
        }
    }
    let mut out = vec![vec![0i64; l]; l];
    for a in 0..l {
        for b in a..l {
            let mut acc = Rational::zero();
            for i in 0..l {
                if inv[i][a].is_zero() {
                    continue;
                }
                for j in 0..l {
                    if !inv[j][b].is_zero() {
                        acc += &inv[i][a] * &two_h[i][j] * &inv[j][b];
                    }
                }
            }
            if !acc.is_integer() {
                return None;
            }
            let v = acc.to_integer().to_i64()?;
            if p == 2 && a == b && v % 2 != 0 {
                return None;
            }
            out[a][b] = v;
            out[b][a] = v;
        }
    }
    Some(out)
}
