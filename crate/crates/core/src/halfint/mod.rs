//! `q`-expansions of level-one integral-weight forms and of half-integral
//! weight forms on `Γ_0(4)`: the Kohnen plus space, Cohen–Eisenstein series,
//! cusp eigenform extraction and coefficient-level operators.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    bernoulli_number, dirichlet_l_minus, divisors, fundamental_split, int, kronecker_std,
    kronecker_symbol, mobius, nullspace, pow_rat, psi_bar, sigma, sign_pow, QSeries, Rational,
};
use crate::error::{JflError, Result};

/// A form of weight `k + 1/2` on `Γ_0(level)`, stored as its `q`-expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfIntForm {
    pub k: i64,
    pub level: u64,
    pub series: QSeries,
    pub plus_flag: bool,
}

impl HalfIntForm {
    /// Wraps a series; with `plus_flag` the support must lie in `𝔇_k`.
    pub fn new(k: i64, level: u64, series: QSeries, plus_flag: bool) -> Result<Self> {
        if series.den() != 1 {
            return Err(JflError::InvalidInput(
                "half-integral weight series must be in integral powers of q".into(),
            ));
        }
        if plus_flag && !in_plus_space(&series, k) {
            return Err(JflError::InvalidInput(format!(
                "plus-space form must vanish at m with (-1)^{k} m ≡ 2, 3 mod 4"
            )));
        }
        Ok(Self {
            k,
            level,
            series,
            plus_flag,
        })
    }

    #[must_use]
    pub fn coeff(&self, m: usize) -> &Rational {
        self.series.coeff(m)
    }
}

/// `m ∈ 𝔇_k`, i.e. `(-1)^k m ≡ 0, 1 mod 4`.
#[must_use]
pub fn in_d_k(m: u64, k: i64) -> bool {
    let r = (sign_pow(k) * m as i64).rem_euclid(4);
    r == 0 || r == 1
}

fn in_plus_space(s: &QSeries, k: i64) -> bool {
    (0..=s.nmax()).all(|m| in_d_k(m as u64, k) || s.coeff(m).is_zero())
}

fn big(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

/// `θ`, `F`, `E4`, `E6` or `Δ` to order `prec`.
pub fn standard_series(name: &str, prec: usize) -> Result<QSeries> {
    if prec < 1 {
        return Err(JflError::InvalidInput(
            "precision must be at least 1".into(),
        ));
    }
    match name {
        "theta" | "θ" => {
            let mut s = QSeries::one(1, prec);
            let mut m = 1usize;
            while m * m <= prec {
                s.set_coeff(m * m, int(2));
                m += 1;
            }
            Ok(s)
        }
        "F" => {
            let mut s = QSeries::zero(1, prec);
            for n in (1..=prec).step_by(2) {
                s.set_coeff(n, big(sigma(1, n as u64)));
            }
            Ok(s)
        }
        "E4" => Ok(eisenstein_level_one(4, prec)),
        "E6" => Ok(eisenstein_level_one(6, prec)),
        "Delta" | "Δ" => Ok(delta_series(prec)),
        _ => Err(JflError::InvalidInput(format!(
            "unknown series {name:?} (theta, F, E4, E6, Delta)"
        ))),
    }
}

/// `E_w = 1 - (2w/B_w) Σ σ_{w-1}(n) qⁿ` for even `w ≥ 4`.
#[must_use]
pub fn eisenstein_level_one(w: u32, prec: usize) -> QSeries {
    assert!(w >= 4 && w.is_multiple_of(2));
    let c = -int(2 * i64::from(w)) / bernoulli_number(w as usize);
    let mut s = QSeries::one(1, prec);
    for n in 1..=prec {
        s.set_coeff(n, &c * big(sigma(w - 1, n as u64)));
    }
    s
}

/// `Δ = q Π (1 - qⁿ)^{24}`.
#[must_use]
pub fn delta_series(prec: usize) -> QSeries {
    // Π(1 - qⁿ) by Euler's pentagonal theorem.
    let mut eta = QSeries::zero(1, prec);
    let mut j: i64 = 0;
    loop {
        let mut any = false;
        for g in [j * (3 * j - 1) / 2, j * (3 * j + 1) / 2] {
            if g >= 0 && (g as usize) <= prec {
                eta.set_coeff(g as usize, int(sign_pow(j)));
                any = true;
            }
        }
        if !any {
            break;
        }
        j += 1;
    }
    let p24 = eta.pow(24);
    let mut s = QSeries::zero(1, prec);
    for n in 1..=prec {
        s.set_coeff(n, p24.coeff(n - 1).clone());
    }
    s
}

/// `dim S_w(SL_2(Z))` for even `w ≥ 0`.
#[must_use]
pub fn dim_cusp_level_one(w: u32) -> usize {
    if w % 2 == 1 || w < 12 {
        return 0;
    }
    let base = (w / 12) as usize;
    if w % 12 == 2 {
        base - 1
    } else {
        base
    }
}

/// The normalized cusp eigenform of weight `w` and level one when
/// `dim S_w = 1`, as `Δ·E4^a·E6^b`.
pub fn level_one_cusp_eigenform(w: u32, prec: usize) -> Result<QSeries> {
    if dim_cusp_level_one(w) != 1 {
        return Err(JflError::Unsupported(format!(
            "level-one eigenform of weight {w}: dim S_{w} = {} ≠ 1",
            dim_cusp_level_one(w)
        )));
    }
    let rest = w - 12;
    let (a, b) = (0..=rest / 4)
        .find_map(|a| {
            let r = rest - 4 * a;
            r.is_multiple_of(6).then_some((a, r / 6))
        })
        .expect("weight of a one-dimensional space is 4a + 6b + 12");
    let mut s = delta_series(prec);
    if a > 0 {
        s = &s * &eisenstein_level_one(4, prec).pow(a);
    }
    if b > 0 {
        s = &s * &eisenstein_level_one(6, prec).pow(b);
    }
    Ok(s)
}

/// Monomials `θ^a F^b` with `a + 4b = 2k + 1`, ordered by increasing `b`;
/// they span `M_{k+1/2}(4)`.
#[must_use]
pub fn halfint_basis(k: i64, prec: usize) -> Vec<QSeries> {
    assert!(k >= 0);
    let w = (2 * k + 1) as u32;
    let theta = standard_series("theta", prec).expect("known");
    let f = standard_series("F", prec).expect("known");
    (0..=w / 4)
        .map(|b| &theta.pow(w - 4 * b) * &f.pow(b))
        .collect()
}

/// `℘_k`: keeps only the coefficients at `m ∈ 𝔇_k`.
#[must_use]
pub fn plus_project(s: &QSeries, k: i64) -> QSeries {
    let mut out = s.clone();
    for m in 0..=s.nmax() {
        if !in_d_k(m as u64, k) {
            out.set_coeff(m, Rational::zero());
        }
    }
    out
}

/// `U(a)`: `Σ c(m) q^m ↦ Σ c(am) q^m`, to order `⌊nmax/a⌋`.
#[must_use]
pub fn u_op(a: usize, s: &QSeries) -> QSeries {
    assert!(a >= 1);
    let n = s.nmax() / a;
    QSeries::from_coeffs(s.den(), (0..=n).map(|m| s.coeff(a * m).clone()).collect())
}

/// `U_k(a²) = U(a²)` followed by `℘_k`.
#[must_use]
pub fn u_k_op(a: usize, s: &QSeries, k: i64) -> QSeries {
    plus_project(&u_op(a * a, s), k)
}

/// `ψ_{(-1)^k m}(p)`, the Kronecker character of `(-1)^k m` at `p`.
fn psi_disc(m: usize, k: i64, p: u64) -> i64 {
    i64::from(kronecker_std(sign_pow(k) * m as i64, p as i64))
}

/// Plus-space Hecke operator `T(p²)`:
/// `c(p²m) + ψ_{(-1)^k m}(p) p^{k-1} c(m) + p^{2k-1} c(m/p²)`. At `p = 2`
/// the formula holds on `𝔇_k` only and the result is projected by `℘_k`.
#[must_use]
pub fn hecke_halfint(p: u64, s: &QSeries, k: i64) -> QSeries {
    let p2 = (p * p) as usize;
    let n = s.nmax() / p2;
    let pr = int(p as i64);
    let a = pow_rat(&pr, k - 1);
    let b = pow_rat(&pr, 2 * k - 1);
    let coeffs = (0..=n)
        .map(|m| {
            let mut c = s.coeff(p2 * m).clone();
            let ch = psi_disc(m, k, p);
            if ch != 0 {
                c += int(ch) * &a * s.coeff(m);
            }
            if m % p2 == 0 {
                c += &b * s.coeff(m / p2);
            }
            c
        })
        .collect();
    let out = QSeries::from_coeffs(1, coeffs);
    if p == 2 {
        plus_project(&out, k)
    } else {
        out
    }
}

/// `λ` with `g | T(p²) = λ g` to the available order; `None` if `g` is not
/// an eigenform there or vanishes.
#[must_use]
pub fn hecke_eigenvalue(p: u64, s: &QSeries, k: i64) -> Option<Rational> {
    let t = hecke_halfint(p, s, k);
    let m0 = (0..=t.nmax()).find(|&m| !s.coeff(m).is_zero())?;
    let lambda = t.coeff(m0) / s.coeff(m0);
    (0..=t.nmax())
        .all(|m| *t.coeff(m) == &lambda * s.coeff(m))
        .then_some(lambda)
}

/// `g | P(p)`: `(1 + η ((-1)^k m/p)) (c(m) + η p^k c(m/p²))`.
#[must_use]
pub fn p_op(p: u64, s: &QSeries, k: i64, eta: i32) -> QSeries {
    let p2 = (p * p) as usize;
    let pk = pow_rat(&int(p as i64), k);
    let e = int(i64::from(eta));
    let coeffs = (0..=s.nmax())
        .map(|m| {
            let leg = kronecker_symbol(sign_pow(k) * m as i64, p as i64);
            let factor = int(1) + &e * int(i64::from(leg));
            if factor.is_zero() {
                return Rational::zero();
            }
            let mut c = s.coeff(m).clone();
            if m % p2 == 0 {
                c += &e * &pk * s.coeff(m / p2);
            }
            factor * c
        })
        .collect();
    QSeries::from_coeffs(1, coeffs)
}

/// `g | Q(ℓ)`: `c(ℓ²m) - ℓ^k ((-1)^k m/ℓ) c(m) - ℓ^{2k} c(m/ℓ²)` on `m ∈ 𝔇_k`,
/// to order `⌊nmax/ℓ²⌋`.
#[must_use]
pub fn q_op(l: u64, s: &QSeries, k: i64) -> QSeries {
    let l2 = (l * l) as usize;
    let lr = int(l as i64);
    let lk = pow_rat(&lr, k);
    let l2k = pow_rat(&lr, 2 * k);
    let coeffs = (0..=s.nmax() / l2)
        .map(|m| {
            if !in_d_k(m as u64, k) {
                return Rational::zero();
            }
            let leg = kronecker_symbol(sign_pow(k) * m as i64, l as i64);
            let mut c = s.coeff(l2 * m) - int(i64::from(leg)) * &lk * s.coeff(m);
            if m % l2 == 0 {
                c -= &l2k * s.coeff(m / l2);
            }
            c
        })
        .collect();
    QSeries::from_coeffs(1, coeffs)
}

/// Condition (i): `c(m) = 0` whenever `((-1)^k m / q) = -η`.
#[must_use]
pub fn condition_i_check(s: &QSeries, q: u64, eta: i32, k: i64) -> bool {
    (0..=s.nmax())
        .all(|m| kronecker_symbol(sign_pow(k) * m as i64, q as i64) != -eta || s.coeff(m).is_zero())
}

/// Basis of `S^+_{k+1/2}(4)` to order `prec`, found inside the span of
/// `θ^a F^b` by imposing `c(0) = 0` and plus-space support; its dimension
/// must equal `dim S_{2k}(SL_2(Z))`. Each element has leading coefficient 1.
pub fn cusp_plus_eigenbasis(k: i64, prec: usize) -> Result<Vec<HalfIntForm>> {
    let basis = halfint_basis(k, prec);
    let nb = basis.len();
    let mut rows = vec![basis.iter().map(|b| b.coeff(0).clone()).collect::<Vec<_>>()];
    for m in 1..=prec {
        if !in_d_k(m as u64, k) {
            rows.push(basis.iter().map(|b| b.coeff(m).clone()).collect());
        }
    }
    let ns = nullspace(&rows, nb);
    let expected = dim_cusp_level_one(2 * k as u32);
    if ns.len() != expected {
        return Err(JflError::Inconsistent(format!(
            "plus cusp space of weight {k}+1/2 has dimension {} but dim S_{} = {expected}",
            ns.len(),
            2 * k
        )));
    }
    ns.into_iter()
        .map(|v| {
            let mut s = QSeries::zero(1, prec);
            for (c, b) in v.iter().zip(&basis) {
                if !c.is_zero() {
                    s = &s + &b.scale(c);
                }
            }
            let lead = (0..=prec)
                .find(|&m| !s.coeff(m).is_zero())
                .map(|m| s.coeff(m).clone())
                .ok_or_else(|| JflError::Inconsistent("zero vector in the cusp basis".into()))?;
            HalfIntForm::new(k, 4, s.scale(&(Rational::one() / lead)), true)
        })
        .collect()
}

/// Cohen's numbers `H(k, N)` for `0 ≤ N ≤ prec`, the coefficients of the
/// Cohen–Eisenstein series of weight `k + 1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohenSeries {
    pub k: i64,
    pub coeffs: Vec<Rational>,
}

impl CohenSeries {
    #[must_use]
    pub fn series(&self) -> QSeries {
        QSeries::from_coeffs(1, self.coeffs.clone())
    }
}

/// `H(k, N) = L(1-k, ψ_D) Σ_{d|f} μ(d) ψ_D(d) d^{k-1} σ_{2k-1}(f/d)` where
/// `(-1)^k N = D f²` with `D` a fundamental discriminant (or 1), and
/// `H(k, 0) = ζ(1-2k)`.
pub fn cohen_h(k: i64, n: u64) -> Result<Rational> {
    if k < 2 {
        return Err(JflError::InvalidInput("Cohen numbers need k ≥ 2".into()));
    }
    if n == 0 {
        return dirichlet_l_minus(2 * k as usize, 1);
    }
    if !in_d_k(n, k) {
        return Ok(Rational::zero());
    }
    let (d_abs, f) = fundamental_split(n, k);
    let d = sign_pow(k) * d_abs.to_integer().to_i64().expect("small");
    let f = f.to_integer().to_u64().expect("integral conductor on 𝔇_k");
    let l = dirichlet_l_minus(k as usize, d)?;
    let mut acc = Rational::zero();
    for e in divisors(f) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let ch = kronecker_std(d, e as i64);
        if ch == 0 {
            continue;
        }
        acc += int(i64::from(mu * ch))
            * pow_rat(&int(e as i64), k - 1)
            * big(sigma((2 * k - 1) as u32, f / e));
    }
    Ok(l * acc)
}

/// Cohen–Eisenstein series `Σ H(k, N) q^N` to order `prec`.
pub fn cohen_eisenstein(k: i64, prec: usize) -> Result<CohenSeries> {
    let coeffs = (0..=prec as u64)
        .map(|n| cohen_h(k, n))
        .collect::<Result<_>>()?;
    Ok(CohenSeries { k, coeffs })
}

/// Which of the equivalent conditions of the Atkin–Lehner sign lemma hold for
/// `(g, f)` at `p` with sign `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma21Report {
    /// `c_f(p) = ε p^{k-1}`.
    pub f_coefficient: bool,
    /// `c_g(p² m) = ε p^{k-1} c_g(m)` for all available `m`.
    pub g_recursion: bool,
    /// `c_g(m) = 0` whenever `ψ̄_p((-1)^k m) = ε`.
    pub g_vanishing: bool,
}

impl Lemma21Report {
    /// The three conditions agree.
    #[must_use]
    pub fn consistent(&self) -> bool {
        self.f_coefficient == self.g_recursion && self.g_recursion == self.g_vanishing
    }
}

/// Evaluates the three coefficient conditions for `g` of weight `k + 1/2`
/// and `f` of weight `2k`.
#[must_use]
pub fn lemma21_checks(g: &QSeries, f: &QSeries, k: i64, p: u64, eps: i32) -> Lemma21Report {
    let pr = int(p as i64);
    let target = int(i64::from(eps)) * pow_rat(&pr, k - 1);
    let f_coefficient = (p as usize) <= f.nmax() && *f.coeff(p as usize) == target;
    let p2 = (p * p) as usize;
    let g_recursion = (0..=g.nmax() / p2).all(|m| *g.coeff(p2 * m) == &target * g.coeff(m));
    let g_vanishing = (1..=g.nmax())
        .all(|m| psi_bar(&int(sign_pow(k) * m as i64), p) != eps || g.coeff(m).is_zero());
    Lemma21Report {
        f_coefficient,
        g_recursion,
        g_vanishing,
    }
}
