//! The Maass lift to the orthogonal group: vectors `η = x_e e + α + x_f f`
//! of `T = Ze ⊕ L* ⊕ Zf`, their content `ε(η)`, and the coefficients
//! `c_F(η) = Σ_{d | ε(η)} d^{κ-1} c(D_η/d²)`.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{b_count, local_product_at, LiftInputEven, LiftInputOdd};
use crate::arith::{
    divisors, fundamental_split, int, pow_rat, rat_string, HalfPowerNumber, Rational,
};
use crate::error::{JflError, Result};
use crate::jacobi::{check_dual, rat_to_i64, rational_half_pow, JacobiKind, JacobiMCoeffs};
use crate::lattice::GlobalData;

/// A vector of `T` in the coordinates `(x_e, α, x_f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaassEta {
    pub x_e: i64,
    #[serde(serialize_with = "ser_rats")]
    pub alpha: Vec<Rational>,
    pub x_f: i64,
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rat_string))
}

impl MaassEta {
    #[must_use]
    pub fn new(x_e: i64, alpha: Vec<Rational>, x_f: i64) -> Self {
        Self { x_e, alpha, x_f }
    }

    /// `Q[η] = 2 x_e x_f - S[α]`.
    #[must_use]
    pub fn norm(&self, g: &GlobalData) -> Rational {
        int(2 * self.x_e * self.x_f) - g.lattice.norm(&self.alpha)
    }

    /// `D_η = D_S Q[η]/2`.
    pub fn d_eta(&self, g: &GlobalData) -> Result<i64> {
        rat_to_i64(&(int(g.big_d_s) * self.norm(g) / int(2)), "D_η")
    }

    /// `η ∈ T⁺`: `Q[η] > 0` and `Q(e + f, η) = x_e + x_f > 0`.
    #[must_use]
    pub fn is_positive(&self, g: &GlobalData) -> bool {
        self.norm(g) > Rational::zero() && self.x_e + self.x_f > 0
    }

    /// `η ∈ T⁰`: `Q[η] = 0` and `x_e + x_f > 0`.
    #[must_use]
    pub fn is_isotropic(&self, g: &GlobalData) -> bool {
        self.norm(g).is_zero() && self.x_e + self.x_f > 0
    }
}

/// `ε(η) = max{N : η/N ∈ T}`, the gcd of `x_e`, `x_f` and the entries of
/// `Sα` (the coordinates of `α` in the basis of `L*`).
pub fn epsilon_eta(g: &GlobalData, eta: &MaassEta) -> Result<u64> {
    check_dual(&g.lattice, &eta.alpha)?;
    let mut acc = eta.x_e.unsigned_abs().gcd(&eta.x_f.unsigned_abs());
    for v in g.lattice.apply(&eta.alpha) {
        acc = acc.gcd(
            &v.to_integer()
                .to_i64()
                .expect("small coordinate")
                .unsigned_abs(),
        );
    }
    if acc == 0 {
        return Err(JflError::InvalidInput("η = 0 has no content".into()));
    }
    Ok(acc)
}

/// `c(D)` read at its key; a missing constant term of a cusp form is zero.
fn c_at(c: &JacobiMCoeffs, d: i64) -> Result<Rational> {
    let key = d * c.global.delta_s.unwrap_or(1);
    match c.get(key) {
        Some(v) => Ok(v.clone()),
        None if key == 0 && c.kind == JacobiKind::Cusp => Ok(Rational::zero()),
        None => Err(JflError::InvalidInput(format!(
            "no coefficient at key {key}"
        ))),
    }
}

/// `c_F(η) = Σ_{d | ε(η)} d^{κ-1} c(D_η/d²)` for `η ∈ T⁰ ∪ T⁺`.
pub fn maass_lift(c: &JacobiMCoeffs, eta: &MaassEta) -> Result<Rational> {
    let g = &c.global;
    if !(eta.is_positive(g) || eta.is_isotropic(g)) {
        return Err(JflError::InvalidInput("η must lie in T⁰ ∪ T⁺".into()));
    }
    if c.kind == JacobiKind::Cusp && !eta.is_positive(g) {
        return Err(JflError::InvalidInput(
            "cusp forms are supported on T⁺".into(),
        ));
    }
    let eps = epsilon_eta(g, eta)?;
    let d_eta = eta.d_eta(g)?;
    let mut acc = Rational::zero();
    for d in divisors(eps) {
        let d2 = (d * d) as i64;
        acc += pow_rat(&int(d as i64), c.kappa - 1) * c_at(c, d_eta / d2)?;
    }
    Ok(acc)
}

/// `c_F(η)` for every `η ∈ T⁺` with `0 ≤ x_e, x_f ≤ bound` and `α` a coset
/// representative plus a vector with coordinates in `[-bound, bound]`.
pub fn maass_table(c: &JacobiMCoeffs, bound: i64) -> Result<Vec<(MaassEta, Rational)>> {
    let g = &c.global;
    let n = g.n;
    let reps = crate::lattice::disc_group(&g.lattice).reps;
    let width = (2 * bound + 1) as usize;
    let total = width
        .checked_pow(n as u32)
        .ok_or_else(|| JflError::TooLarge("maass table bound".into()))?;
    if total > 1_000_000 {
        return Err(JflError::TooLarge(format!(
            "{total} lattice shifts per coset"
        )));
    }
    let mut out = Vec::new();
    for x_e in 0..=bound {
        for x_f in 0..=bound {
            for rep in &reps {
                for idx in 0..total {
                    let mut rest = idx;
                    let alpha: Vec<Rational> = rep
                        .iter()
                        .map(|r| {
                            let v = (rest % width) as i64 - bound;
                            rest /= width;
                            r + int(v)
                        })
                        .collect();
                    let eta = MaassEta::new(x_e, alpha, x_f);
                    if eta.is_positive(g) {
                        let v = maass_lift(c, &eta)?;
                        out.push((eta, v));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The odd-rank coefficient display
/// `Σ_{d | ε(η)} 2^{-b_{bd}(N)} d^{n/2} c_g(𝔡_N) 𝔣_N^{k-1/2} Π_p l_{p,S,N/d²}(α_p)`
/// at `N = Δ_η = δ_S D_η`.
pub fn maass_display_odd(input: &LiftInputOdd, eta: &MaassEta) -> Result<Rational> {
    let g = &input.global;
    if !eta.is_positive(g) {
        return Err(JflError::InvalidInput("η must lie in T⁺".into()));
    }
    let n = (g.delta_s.expect("odd rank") * eta.d_eta(g)?) as u64;
    let (dd, ff) = fundamental_split(n, input.k);
    let scale = pow_rat(&int(2), -(b_count(input.b * input.d, n, input.k) as i64));
    let mut acc = HalfPowerNumber::zero();
    for d in divisors(epsilon_eta(g, eta)?) {
        let prod = local_product_at(g, n / (d * d), input.k, |p| input.satake(p))?;
        if prod.is_zero() {
            continue;
        }
        let cg = input.g.coeff(rat_to_i64(&dd, "𝔡_N")? as usize).clone();
        acc = acc
            + HalfPowerNumber::half_pow_int(d, g.n as i64)
                * HalfPowerNumber::from_rational(&scale * cg)
                * rational_half_pow(&ff, 2 * input.k - 1)?
                * prod;
    }
    acc.to_rational()
        .ok_or_else(|| JflError::Inconsistent(format!("c_F({n}) = {acc} keeps irrational terms")))
}

/// The even-rank coefficient display
/// `Σ_{d | ε(η)} d^{n/2} N^{(k-1)/2} Π_p l_{p,S,N/d²}(α_p)` at `N = D_η`.
pub fn maass_display_even(input: &LiftInputEven, eta: &MaassEta) -> Result<Rational> {
    let g = &input.global;
    if !eta.is_positive(g) {
        return Err(JflError::InvalidInput("η must lie in T⁺".into()));
    }
    let n = eta.d_eta(g)? as u64;
    let mut acc = HalfPowerNumber::zero();
    for d in divisors(epsilon_eta(g, eta)?) {
        let prod = local_product_at(g, n / (d * d), input.k, |p| input.satake(p))?;
        acc = acc
            + HalfPowerNumber::half_pow_int(d, g.n as i64)
                * HalfPowerNumber::half_pow_int(n, input.k - 1)
                * prod;
    }
    acc.to_rational()
        .ok_or_else(|| JflError::Inconsistent(format!("c_F({n}) = {acc} keeps irrational terms")))
}
