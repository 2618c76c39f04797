//! Exact checks of the local coefficient identities behind the lifts, and
//! the comparison of the degree-two Ikeda coefficients with the lift of
//! `S = (2)`.
//!
//! The symbolic checks work in `Q[√p][Λ, Λ⁻¹]` (type [`HPoly`]) where `Λ`
//! stands for a free Hecke eigenvalue or Satake parameter.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{c_phi_odd, satake_eval, EigenData, LiftInputOdd, SatakeParam};
use crate::arith::{
    frak_f_p, fundamental_discriminant, fundamental_split, int, is_prime, kronecker_std, ord_p,
    pow_rat, psi_bar_k, rat_string, sign_pow, HalfPowerNumber, QSeries, Rational,
};
use crate::error::{JflError, Result};
use crate::jacobi::{disc_index, rat_to_i64, rational_half_pow};
use crate::lattice::{
    a_s_count_local, a_s_local_factor, disc_group, eta_general, extended_gram, GlobalData,
    PrimeClass,
};
use crate::local_factors::{f_tilde, l_s_poly, HPoly};
use crate::siegel::{extract_f, HalfIntegralMatrix, SiegelOracle};

/// Outcome of an identity check: the number of instances compared and a
/// description of each failure.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    fn compare<T: PartialEq + std::fmt::Debug>(&mut self, what: String, lhs: &T, rhs: &T) {
        self.cases += 1;
        if lhs != rhs {
            self.failures.push(format!("{what}: {lhs:?} ≠ {rhs:?}"));
        }
    }

    #[must_use]
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

fn hc(x: HalfPowerNumber) -> HPoly {
    HPoly::constant(x)
}

fn ph(p: u64, e: i64) -> HalfPowerNumber {
    HalfPowerNumber::half_pow(p, e)
}

/// `Λ ↦ c·Λ`, the symbol scaled by a constant.
fn symbol(c: HalfPowerNumber) -> HPoly {
    HPoly::monomial(c, 1)
}

fn eval_sym(poly: &HPoly, param: &SatakeParam<HPoly>) -> Result<HPoly> {
    satake_eval(poly, param, |c| hc(c.clone()))
}

/// Positive `𝔡 ≤ bound` with `(-1)^k 𝔡` a fundamental discriminant.
fn fundamental_ds(k: i64, bound: i64) -> Vec<i64> {
    (1..=bound)
        .filter(|&d| {
            let s = sign_pow(k) * d;
            s != 1 && fundamental_discriminant(s) == s
        })
        .collect()
}

/// Symbolic `c_g(𝔡p^{2j})`, `0 ≤ j ≤ top`, with `c_g(𝔡) = 1`, generated by
/// the plus-space `T(p²)` relation
/// `c(p²m) = Λ c(m) - ψ_{(-1)^k m}(p) p^{k-1} c(m) - p^{2k-1} c(m/p²)`.
fn halfint_model(p: u64, d: i64, k: i64, top: i64) -> Vec<HPoly> {
    let mut out: Vec<HPoly> = vec![HPoly::one()];
    for j in 0..top {
        let m = d * (p as i64).pow(2 * j as u32);
        let psi = i64::from(kronecker_std(sign_pow(k) * m, p as i64));
        let cur = out[j as usize].clone();
        let lam = HPoly::x() * cur.clone();
        let mid = cur.scale(&ph(p, 2 * k - 2).scale(&int(psi)));
        let prev = if j >= 1 {
            out[(j - 1) as usize].scale(&ph(p, 4 * k - 2))
        } else {
            HPoly::zero()
        };
        out.push(lam - mid - prev);
    }
    out
}

/// Symbolic `c_f(p^j)`, `0 ≤ j ≤ top`, from `c_f(p) = Λ` and
/// `c(p^{j+1}) = Λ c(p^j) - χ(p) p^{w-1} c(p^{j-1})`.
fn hecke_model(p: u64, chi: i64, w: i64, top: i64) -> Vec<HPoly> {
    let mut out: Vec<HPoly> = vec![HPoly::one(), HPoly::x()];
    for j in 1..top {
        let next = HPoly::x() * out[j as usize].clone()
            - out[(j - 1) as usize].scale(&ph(p, 2 * w - 2).scale(&int(chi)));
        out.push(next);
    }
    out.truncate(top as usize + 1);
    out
}

fn at(v: &[HPoly], j: i64) -> HPoly {
    if j < 0 {
        HPoly::zero()
    } else {
        v[j as usize].clone()
    }
}

/// Representable `D = u p^e` (`p ∤ u`, `u ≤ 40`) with `a_{S,p}(D) ≠ 0`.
fn sample_indices(g: &GlobalData, p: u64, k: i64, e_max: u32) -> Vec<i64> {
    let mut out = Vec::new();
    for u in 1..=40i64 {
        if u % p as i64 == 0 {
            continue;
        }
        for e in 0..=e_max {
            let d = u * (p as i64).pow(e);
            if a_s_count_local(g, d, k) != 0 && a_s_local_factor(g, p, d, k) != 0 {
                out.push(d);
            }
        }
    }
    out
}

/// The local identities for odd `n`:
/// (2) `p ∈ 𝔖₁`, (3) `p ∈ 𝔖₂` on the symbolic plus-space model, and the
/// closed forms (4) at `α_p = -η_p(S) p^{-1/2}` and (5) at `α_p = ε p^{-1/2}`,
/// for `𝔣 ≤ f_max`.
pub fn lemma54_check(g: &GlobalData, k: i64, part: u8, f_max: i64) -> Result<IdentityReport> {
    if !g.is_odd() {
        return Err(JflError::InvalidInput(
            "these identities concern odd n".into(),
        ));
    }
    let mut rep = IdentityReport::new(&format!("odd-rank local identity ({part})"));
    match part {
        2 | 3 => {
            let primes = if part == 2 { &g.s1 } else { &g.s2 };
            for &p in primes {
                let pair = SatakeParam::Pair {
                    trace: symbol(ph(p, 1 - 2 * k)),
                    c: 1,
                };
                for d in fundamental_ds(k, 40) {
                    let model = halfint_model(p, d, k, f_max);
                    for f in 0..=f_max {
                        let a = int(d) * pow_rat(&int(p as i64), 2 * f);
                        let lhs = eval_sym(&l_s_poly(g, p, &a, k)?, &pair)?
                            .scale(&ph(p, (2 * k - 1) * f));
                        let rhs = if part == 2 {
                            let eta = i64::from(g.local(p).eta_p);
                            at(&model, f) + at(&model, f - 1).scale(&ph(p, 2 * k).scale(&int(eta)))
                        } else {
                            let x = sign_pow(k) * d * (p as i64).pow((2 * f - 2).max(0) as u32);
                            let sym = if f >= 1 {
                                i64::from(kronecker_std(x, p as i64))
                            } else {
                                0
                            };
                            at(&model, f)
                                - at(&model, f - 1).scale(&ph(p, 2 * k).scale(&int(sym)))
                                - at(&model, f - 2).scale(&ph(p, 4 * k))
                        };
                        rep.compare(format!("p={p} 𝔡={d} 𝔣={f}"), &lhs, &rhs);
                    }
                }
            }
        }
        4 | 5 => {
            let primes = if part == 4 { &g.s1 } else { &g.s2 };
            let delta = g.delta_s.expect("odd rank");
            for &p in primes {
                let eta = g.local(p).eta_p;
                let signs: Vec<i32> = if part == 4 { vec![-eta] } else { vec![1, -1] };
                for d in sample_indices(g, p, k, (2 * f_max + 3) as u32) {
                    let big_delta = int(delta * d);
                    let f = frak_f_p(&big_delta, p, k);
                    if f > f_max {
                        continue;
                    }
                    let psi = i64::from(psi_bar_k(&big_delta, p, k));
                    let a = int(a_s_local_factor(g, p, d, k));
                    let poly = l_s_poly(g, p, &big_delta, k)?;
                    for &s in &signs {
                        let x = ph(p, -1).scale(&int(i64::from(s)));
                        let lhs = poly.eval(&x, &x.inv().expect("nonzero"), Clone::clone);
                        let tail = if part == 4 {
                            int(1 + i64::from(eta) * psi) / &a
                        } else {
                            int((p as i64 + 1) * (1 - i64::from(s) * psi)) / &a
                        };
                        let rhs = x.pow_i(f) * HalfPowerNumber::from_rational(tail);
                        rep.compare(format!("p={p} D={d} ε={s}"), &lhs, &rhs);
                    }
                }
            }
        }
        _ => {
            return Err(JflError::InvalidInput(format!(
                "unknown part {part}; expected 2..=5"
            )))
        }
    }
    Ok(rep)
}

/// The first identity on real data: `c_g(𝔡) p^{(k-1/2)𝔣} l_{p,S,𝔡p^{2𝔣}}(α_p)
/// = c_g(𝔡p^{2𝔣})` for `p ∈ 𝔖₀` among `primes` and every fundamental `𝔡`
/// with `𝔡p^{2𝔣}` inside the precision of `g`.
pub fn lemma54_real(input: &LiftInputOdd, primes: &[u64], f_max: i64) -> Result<IdentityReport> {
    let g = &input.global;
    let k = input.k;
    let mut rep = IdentityReport::new("odd-rank local identity (1)");
    let nmax = input.g.nmax() as i64;
    for &p in primes {
        if g.class(p) != PrimeClass::S0 {
            continue;
        }
        let param = input.satake(p)?;
        for d in fundamental_ds(k, nmax) {
            for f in 0..=f_max {
                let m = d * (p as i64).pow(2 * f as u32);
                if m > nmax {
                    break;
                }
                let poly = l_s_poly(g, p, &int(m), k)?;
                let lhs = satake_eval(&poly, &param, Clone::clone)?
                    * ph(p, (2 * k - 1) * f)
                    * HalfPowerNumber::from_rational(input.g.coeff(d as usize).clone());
                let rhs = HalfPowerNumber::from_rational(input.g.coeff(m as usize).clone());
                rep.compare(format!("p={p} 𝔡={d} 𝔣={f}"), &lhs, &rhs);
            }
        }
    }
    Ok(rep)
}

/// Reduces a Laurent polynomial in `Y` modulo `Y² = c`.
fn reduce_quadratic(poly: &HPoly, c: &HalfPowerNumber) -> HPoly {
    let mut out = HPoly::zero();
    for (&e, v) in poly.terms() {
        let q = e.div_euclid(2);
        out.add_term(e.rem_euclid(2), v.clone() * c.pow_i(q));
    }
    out
}

/// The local identities for even `n`, `0 ≤ m ≤ m_max`:
/// (1) `p ∈ 𝔖₀` and (3) `p ∈ 𝔖₂`, `p ∤ d`, against the Hecke recursion in
/// `Λ = c_f(p)`; (2) `p ∈ 𝔖₁` with `α_p = Y`, `|Y| = 1`; (4) `p ∈ 𝔖₂`,
/// `p | d`, modulo `α_p² = ξ_p/p`.
///
/// In (2) the eigenvalue entering the right side is that of the
/// Atkin–Lehner partner: `c_f(p^e) = (Y⁻¹p^{(k-1)/2})^e` and its conjugate
/// `(Y p^{(k-1)/2})^e`.
pub fn lemma73_check(g: &GlobalData, k: i64, part: u8, m_max: i64) -> Result<IdentityReport> {
    if g.is_odd() {
        return Err(JflError::InvalidInput(
            "these identities concern even n".into(),
        ));
    }
    let mut rep = IdentityReport::new(&format!("even-rank local identity ({part})"));
    match part {
        1 | 3 => {
            let primes: Vec<u64> = if part == 1 {
                (2..=13)
                    .filter(|&p| is_prime(p) && g.class(p) == PrimeClass::S0)
                    .collect()
            } else {
                g.s2.clone()
            };
            for p in primes {
                let xi = g.local(p).xi_p.expect("even rank");
                let pair = SatakeParam::Pair {
                    trace: symbol(ph(p, 1 - k).scale(&int(i64::from(xi)))),
                    c: xi,
                };
                let model = hecke_model(p, i64::from(xi), k, m_max);
                for m in 0..=m_max {
                    let a = pow_rat(&int(p as i64), m);
                    let lhs = eval_sym(&l_s_poly(g, p, &a, k)?, &pair)?.scale(&ph(p, m * (k - 1)));
                    let rhs = if part == 1 {
                        at(&model, m)
                    } else {
                        at(&model, m)
                            - at(&model, m - 2).scale(&ph(p, 2 * k).scale(&int(i64::from(xi))))
                    };
                    rep.compare(format!("p={p} m={m}"), &lhs, &rhs);
                }
            }
        }
        2 => {
            let single = SatakeParam::Single {
                alpha: HPoly::x(),
                alpha_inv: HPoly::x_pow(-1),
            };
            for &p in &g.s1 {
                let eta = i64::from(g.local(p).eta_p_half);
                for d in sample_indices(g, p, k, m_max as u32) {
                    let e = i64::from(ord_p(d, p));
                    let lhs =
                        eval_sym(&l_s_poly(g, p, &int(d), k)?, &single)?.scale(&ph(p, (k - 1) * e));
                    let c = HPoly::monomial(ph(p, (k - 1) * e), -e);
                    let c_bar = HPoly::monomial(ph(p, (k - 1) * e), e);
                    let chi = i64::from(g.chi_low_s_p(p, &int(sign_pow(k) * g.d_s * d))?);
                    let a = HalfPowerNumber::from_int(a_s_local_factor(g, p, d, k));
                    let rhs = (c + c_bar.scale(&HalfPowerNumber::from_int(eta * chi)))
                        .scale(&a.inv().expect("a ≠ 0"));
                    rep.compare(format!("p={p} D={d}"), &lhs, &rhs);
                }
            }
        }
        4 => {
            let single = SatakeParam::Single {
                alpha: HPoly::x(),
                alpha_inv: HPoly::x_pow(-1),
            };
            for &p in &g.s2 {
                let xi = i64::from(g.local(p).xi_p.expect("even rank"));
                let sq = HalfPowerNumber::from_rational(int(xi) / int(p as i64));
                for m in 0..=m_max {
                    let pm = (p as i64).pow(m as u32);
                    let lhs = eval_sym(&l_s_poly(g, p, &int(pm), k)?, &single)?;
                    let a = int(a_s_local_factor(g, p, pm, k));
                    let scale = HalfPowerNumber::from_rational(int(p as i64 + 1) / a)
                        .scale(&pow_rat(&int(xi), m));
                    let rhs = HPoly::monomial(scale, m);
                    rep.compare(
                        format!("p={p} m={m}"),
                        &reduce_quadratic(&lhs, &sq),
                        &reduce_quadratic(&rhs, &sq),
                    );
                }
            }
        }
        _ => {
            return Err(JflError::InvalidInput(format!(
                "unknown part {part}; expected 1..=4"
            )))
        }
    }
    Ok(rep)
}

/// `η_p(S_{a,α}) = η_p(S/2) χ̲_{S,p}((-1)^k d_S D_{a,α})` for even `n`, every
/// coset representative `α`, `a ≤ a_max` and every `p ∈ 𝔖₁`.
pub fn remark71_check(g: &GlobalData, k: i64, a_max: i64) -> Result<IdentityReport> {
    if g.is_odd() {
        return Err(JflError::InvalidInput(
            "the relation concerns even n".into(),
        ));
    }
    let mut rep = IdentityReport::new("η_p of the extended lattice");
    let disc = disc_group(&g.lattice);
    for alpha in &disc.reps {
        for a in 1..=a_max {
            let d = disc_index(g, a, alpha)?.d;
            if d <= 0 {
                continue;
            }
            let ext = extended_gram(&g.lattice, a, alpha)?;
            for &p in &g.s1 {
                let lhs = eta_general(&ext.gram_rat(), p)?;
                let rhs =
                    g.local(p).eta_p_half * g.chi_low_s_p(p, &int(sign_pow(k) * g.d_s * d))?;
                rep.compare(format!("p={p} a={a} α={alpha:?}"), &lhs, &rhs);
            }
        }
    }
    Ok(rep)
}

/// The degree-two coefficient `c_g(𝔡_{D_h}) 𝔣_{D_h}^{k-1/2} Π_p F̃_p(h; α_p)`
/// of the Ikeda lift of a level-one `f` of weight `2k`, with
/// `D_h = det(2h)`.
pub fn ikeda_coefficient(
    h: &HalfIntegralMatrix,
    f: &EigenData,
    g: &QSeries,
    oracle: &mut SiegelOracle,
) -> Result<Rational> {
    if h.size() != 2 || f.level != 1 {
        return Err(JflError::InvalidInput(
            "needs a 2×2 matrix and a level-one form".into(),
        ));
    }
    let k = f.weight / 2;
    let dh = h.det2h();
    if dh <= 0 {
        return Err(JflError::InvalidInput("h must be positive definite".into()));
    }
    let dh_r = int(dh);
    let mut primes: Vec<u64> = crate::arith::factorize(dh as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    if !primes.contains(&2) {
        primes.insert(0, 2);
    }
    let mut prod = HalfPowerNumber::one();
    for p in primes {
        let fp = oracle.f_p(h, p)?;
        let big_f = extract_f(h, p, &fp)?;
        let ft = f_tilde(2, &dh_r, &big_f, p)?;
        prod = prod * satake_eval(&ft, &f.satake_odd(p)?, Clone::clone)?;
    }
    if prod.is_zero() {
        return Ok(Rational::zero());
    }
    let (dd, ff) = fundamental_split(dh as u64, k);
    let idx = rat_to_i64(&dd, "𝔡_{D_h}")? as usize;
    if idx > g.nmax() {
        return Err(JflError::InvalidInput(format!(
            "c_g({idx}) beyond the supplied precision"
        )));
    }
    let value = HalfPowerNumber::from_rational(g.coeff(idx).clone())
        * rational_half_pow(&ff, 2 * k - 1)?
        * prod;
    value
        .to_rational()
        .ok_or_else(|| JflError::Inconsistent(format!("Ikeda coefficient {value} is not rational")))
}

/// One compared entry `h = [[1, r/2], [r/2, a]]`.
#[derive(Clone, Debug, Serialize)]
pub struct SkRow {
    pub a: i64,
    pub r: i64,
    pub delta: i64,
    pub ikeda: String,
    pub lift: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkReport {
    pub rows: Vec<SkRow>,
    pub mismatches: Vec<(i64, i64)>,
}

impl SkReport {
    #[must_use]
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && !self.rows.is_empty()
    }
}

/// Compares the Ikeda coefficients at `h = S_{a,α}/2` with the lift table
/// of `S = (2)` for `a ≤ a_max`, `α = r/2`, `0 ≤ r ≤ a`; `ikeda_f` supplies
/// the Satake data on the Siegel side.
pub fn sk_consistency(
    input: &LiftInputOdd,
    ikeda_f: &EigenData,
    a_max: i64,
    oracle: &mut SiegelOracle,
) -> Result<SkReport> {
    if input.global.lattice.gram != vec![vec![2]] || input.b * input.d != 1 {
        return Err(JflError::InvalidInput(
            "the comparison needs S = (2) and level one".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for a in 1..=a_max {
        for r in 0..=a {
            let delta = 4 * a - r * r;
            if delta <= 0 {
                continue;
            }
            let h = HalfIntegralMatrix::from_twice(vec![vec![2, r], vec![r, 2 * a]])?;
            let ikeda = ikeda_coefficient(&h, ikeda_f, &input.g, oracle)?;
            let lift = c_phi_odd(delta as u64, input)?;
            if ikeda != lift {
                mismatches.push((a, r));
            }
            rows.push(SkRow {
                a,
                r,
                delta,
                ikeda: rat_string(&ikeda),
                lift: rat_string(&lift),
            });
        }
    }
    Ok(SkReport { rows, mismatches })
}
