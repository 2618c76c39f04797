//! Lifts of elliptic eigenforms to Jacobi forms of lattice index: the
//! coefficient formulas for odd and even rank, table assembly, the
//! associated `L`-parameters, the twisted forms `f_P, f~, f*`, the Maass
//! lift and the consistency checks of the local identities.

mod identities;
mod maass;
mod satake;
mod twist;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{
    factorize, fundamental_split, int, psi_bar_k, HalfPowerNumber, QSeries, Rational,
};
use crate::error::{JflError, Result};
use crate::jacobi::{
    assemble_table, check_dual, disc_index, jm_membership, local_polys, rat_to_i64,
    rational_half_pow, weight_k, JacobiFourierTable, JacobiKind, JacobiMCoeffs, LParams,
};
use crate::lattice::{disc_group, GlobalData};
use crate::local_factors::HPoly;

pub use identities::{
    ikeda_coefficient, lemma54_check, lemma54_real, lemma73_check, remark71_check, sk_consistency,
    IdentityReport, SkReport, SkRow,
};
pub use maass::{
    epsilon_eta, maass_display_even, maass_display_odd, maass_lift, maass_table, MaassEta,
};
pub use satake::{l_by_recurrence, satake_eval, EigenData, SatakeParam};
pub use twist::{f_p_coeffs, f_sim_by_sum, f_sim_coeffs, f_star_coeffs};

fn divides(a: u64, b: i64) -> bool {
    a != 0 && b % a as i64 == 0
}

fn prime_divisors(m: u64) -> Vec<u64> {
    if m <= 1 {
        return Vec::new();
    }
    factorize(m).into_iter().map(|(p, _)| p).collect()
}

/// Checks `c(p²) = c(p)² - χ(p) p^{w-1}` (and `c(p²) = c(p)²` at level
/// primes) wherever the coefficients reach.
fn check_hecke_relations(f: &EigenData, chi: impl Fn(u64) -> i64) -> Result<()> {
    let len = f.coeffs.len() as u64;
    let mut p = 2;
    while p * p < len {
        if crate::arith::is_prime(p) {
            let cp = &f.coeffs[p as usize];
            let tail = if f.level.is_multiple_of(p) {
                Rational::zero()
            } else {
                int(chi(p)) * crate::arith::pow_rat(&int(p as i64), f.weight - 1)
            };
            if f.coeffs[(p * p) as usize] != cp * cp - tail {
                return Err(JflError::InvalidInput(format!(
                    "eigenform coefficients violate the Hecke relation at p = {p}"
                )));
            }
        }
        p += 1;
    }
    Ok(())
}

/// Input of the odd-rank lift: `f ∈ S_{2k}(Γ₀(bd))` and the corresponding
/// `g` in the plus space of weight `k + 1/2`.
#[derive(Clone, Debug)]
pub struct LiftInputOdd {
    pub global: GlobalData,
    pub k: i64,
    pub b: u64,
    pub d: u64,
    pub f: EigenData,
    /// `c_g(m)`, scaled so the first nonzero coefficient is 1.
    pub g: QSeries,
}

impl LiftInputOdd {
    pub fn new(
        global: GlobalData,
        k: i64,
        b: u64,
        d: u64,
        f: EigenData,
        g: &QSeries,
    ) -> Result<Self> {
        if !global.is_odd() {
            return Err(JflError::InvalidInput("odd-rank lift needs odd n".into()));
        }
        weight_k(&global, k + global.n.div_ceil(2) as i64)?;
        let (b_s, d_s) = (global.b_s.expect("odd rank"), global.d_s);
        if !divides(b, b_s) || !divides(d, d_s) {
            return Err(JflError::InvalidInput(format!(
                "need b | b_S = {b_s} and d | d_S = {d_s}"
            )));
        }
        if f.weight != 2 * k || f.level != b * d {
            return Err(JflError::InvalidInput(format!(
                "f must have weight 2k = {} and level bd = {}",
                2 * k,
                b * d
            )));
        }
        for p in prime_divisors(b) {
            let eta = global.local(p).eta_p;
            if f.al_signs.get(&p) != Some(&eta) {
                return Err(JflError::InvalidInput(format!(
                    "Atkin–Lehner sign at p = {p} must equal η_p(S) = {eta}"
                )));
            }
        }
        check_hecke_relations(&f, |_| 1)?;
        if g.den() != 1 {
            return Err(JflError::InvalidInput(
                "g must be a q-series in integral powers of q".into(),
            ));
        }
        let g = match (0..=g.nmax()).find(|&m| !g.coeff(m).is_zero()) {
            Some(m) => g.scale(&(Rational::one() / g.coeff(m))),
            None => g.clone(),
        };
        Ok(Self {
            global,
            k,
            b,
            d,
            f,
            g,
        })
    }

    #[must_use]
    pub fn kappa(&self) -> i64 {
        self.k + self.global.n.div_ceil(2) as i64
    }

    pub fn satake(&self, p: u64) -> Result<SatakeParam<HalfPowerNumber>> {
        self.f.satake_odd(p)
    }
}

/// The lift input for `S = (2)` and a level-one `f` of weight `2k` when
/// `S_{2k}(SL_2(Z))` is one-dimensional: `f` and `g` are extracted to
/// `q`-precision `prec`.
pub fn level_one_input(k: i64, prec: usize) -> Result<LiftInputOdd> {
    let w = u32::try_from(2 * k)
        .map_err(|_| JflError::InvalidInput(format!("weight 2k = {} out of range", 2 * k)))?;
    let basis = crate::halfint::cusp_plus_eigenbasis(k, prec)?;
    if basis.len() != 1 {
        return Err(JflError::InvalidInput(format!(
            "the plus cusp space of weight {k}+1/2 has dimension {}, not 1",
            basis.len()
        )));
    }
    let f = crate::halfint::level_one_cusp_eigenform(w, prec)?;
    let f = EigenData::from_series(2 * k, 1, &f, BTreeMap::new())?;
    let a1 = crate::lattice::global_data(&crate::lattice::catalog("A1")?)?;
    LiftInputOdd::new(a1, k, 1, 1, f, &basis[0].series)
}

/// Input of the even-rank lift: `f ∈ Prm_k(𝔡_S d, χ_S)` outside `V_k`.
#[derive(Clone, Debug)]
pub struct LiftInputEven {
    pub global: GlobalData,
    pub k: i64,
    pub d: u64,
    pub f: EigenData,
}

impl LiftInputEven {
    /// `not_in_vk` is the caller's assertion that `f` does not come from a
    /// Hecke character as in the exclusion defining `V_k`.
    pub fn new(global: GlobalData, k: i64, d: u64, f: EigenData, not_in_vk: bool) -> Result<Self> {
        if global.is_odd() {
            return Err(JflError::InvalidInput("even-rank lift needs even n".into()));
        }
        weight_k(&global, k + (global.n / 2) as i64)?;
        if !divides(d, global.d_s) {
            return Err(JflError::InvalidInput(format!(
                "need d | d_S = {}",
                global.d_s
            )));
        }
        let fd = global.frak_d_s.expect("even rank") as u64;
        if f.weight != k || f.level != fd * d {
            return Err(JflError::InvalidInput(format!(
                "f must have weight k = {k} and level 𝔡_S d = {}",
                fd * d
            )));
        }
        if !not_in_vk {
            return Err(JflError::InvalidInput(
                "f must lie outside V_k (CM exclusion)".into(),
            ));
        }
        check_hecke_relations(&f, |p| global.chi_s(p as i64).map_or(0, i64::from))?;
        Ok(Self { global, k, d, f })
    }

    #[must_use]
    pub fn kappa(&self) -> i64 {
        self.k + (self.global.n / 2) as i64
    }

    pub fn satake(&self, p: u64) -> Result<SatakeParam<HalfPowerNumber>> {
        let xi = self.global.local(p).xi_p.expect("even rank");
        let ramified = self.global.frak_d_s.is_some_and(|fd| fd % p as i64 == 0);
        self.f.satake_even(p, xi, ramified)
    }
}

/// Either lift input.
#[derive(Clone, Debug)]
pub enum LiftInput {
    Odd(LiftInputOdd),
    Even(LiftInputEven),
}

impl LiftInput {
    #[must_use]
    pub fn global(&self) -> &GlobalData {
        match self {
            Self::Odd(i) => &i.global,
            Self::Even(i) => &i.global,
        }
    }

    #[must_use]
    pub fn kappa(&self) -> i64 {
        match self {
            Self::Odd(i) => i.kappa(),
            Self::Even(i) => i.kappa(),
        }
    }

    /// `c_Φ` at its index: `Δ` for odd `n`, `D` for even `n`.
    pub fn coefficient(&self, key: u64) -> Result<Rational> {
        match self {
            Self::Odd(i) => c_phi_odd(key, i),
            Self::Even(i) => c_phi_even(key, i),
        }
    }

    /// Euler factors `P_p` with `L(Φ, s) = Π_p P_p(p^{-s})⁻¹`.
    pub fn l_params(&self, m_max: u64) -> Result<LParams> {
        let mut factors = BTreeMap::new();
        for p in crate::arith::primes_up_to(m_max) {
            let poly = match self {
                Self::Odd(i) => odd_euler_factor(&i.satake(p)?),
                Self::Even(i) => {
                    let xi = i.global.local(p).xi_p.expect("even rank");
                    even_euler_factor(&i.satake(p)?, xi)
                }
            };
            factors.insert(p, poly);
        }
        Ok(LParams { factors })
    }
}

/// `(1 - αX)(1 - α⁻¹X)`.
#[must_use]
pub fn odd_euler_factor(param: &SatakeParam<HalfPowerNumber>) -> HPoly {
    let trace = match param {
        SatakeParam::Pair { trace, .. } => trace.clone(),
        SatakeParam::Single { alpha, alpha_inv } => alpha.clone() + alpha_inv.clone(),
    };
    HPoly::from_terms([
        (0, HalfPowerNumber::one()),
        (1, -trace),
        (2, HalfPowerNumber::one()),
    ])
}

/// `(1 - α²X)(1 - ξX)(1 - α⁻²X)`; for the pair `{α, ξ/α}` with trace `u`,
/// `α² + α⁻² = u² - 2ξ`.
#[must_use]
pub fn even_euler_factor(param: &SatakeParam<HalfPowerNumber>, xi: i32) -> HPoly {
    let sq_trace = match param {
        SatakeParam::Pair { trace, c } => {
            trace.clone() * trace.clone() - HalfPowerNumber::from_int(2 * i64::from(*c))
        }
        SatakeParam::Single { alpha, alpha_inv } => {
            alpha.clone() * alpha.clone() + alpha_inv.clone() * alpha_inv.clone()
        }
    };
    let quad = HPoly::from_terms([
        (0, HalfPowerNumber::one()),
        (1, -sq_trace),
        (2, HalfPowerNumber::one()),
    ]);
    quad * HPoly::from_terms([
        (0, HalfPowerNumber::one()),
        (1, HalfPowerNumber::from_int(-i64::from(xi))),
    ])
}

/// `b_{bd}(N)`: prime divisors `p` of `bd` with `ψ̄_p((-1)^k N) ≠ 0`.
#[must_use]
pub fn b_count(bd: u64, n: u64, k: i64) -> usize {
    prime_divisors(bd)
        .into_iter()
        .filter(|&p| psi_bar_k(&int(n as i64), p, k) != 0)
        .count()
}

/// `Π_p l_{p,S,N}(α_p)`, evaluating only the nonconstant local factors.
pub fn local_product_at<F>(g: &GlobalData, n: u64, k: i64, satake: F) -> Result<HalfPowerNumber>
where
    F: Fn(u64) -> Result<SatakeParam<HalfPowerNumber>>,
{
    let mut acc = HalfPowerNumber::one();
    for (p, poly) in local_polys(g, n, k)? {
        let value = match (poly.min_exp(), poly.max_exp()) {
            (None, _) => HalfPowerNumber::zero(),
            (Some(0), Some(0)) => poly.coeff(0),
            _ => satake_eval(&poly, &satake(p)?, Clone::clone)?,
        };
        if value.is_zero() {
            return Ok(value);
        }
        acc = acc * value;
    }
    Ok(acc)
}

/// `2^{-b_{bd}(N)} c_g(𝔡_N) 𝔣_N^{k-1/2} Π_p l_{p,S,N}(α_p)` before the
/// rationality check; `c_g` and the Satake data are supplied.
pub fn c_phi_odd_with<C, F>(
    g: &GlobalData,
    k: i64,
    bd: u64,
    n: u64,
    c_g: C,
    satake: F,
) -> Result<HalfPowerNumber>
where
    C: Fn(u64) -> Result<Rational>,
    F: Fn(u64) -> Result<SatakeParam<HalfPowerNumber>>,
{
    if n == 0 {
        return Err(JflError::InvalidInput("c_Φ(N) needs N ≥ 1".into()));
    }
    let prod = local_product_at(g, n, k, satake)?;
    if prod.is_zero() {
        return Ok(prod);
    }
    let (dd, ff) = fundamental_split(n, k);
    if !dd.is_integer() {
        return Err(JflError::Inconsistent(format!(
            "𝔡_{n} = {dd} is not integral but l_{{p,S,{n}}} ≠ 0"
        )));
    }
    let cg = c_g(rat_to_i64(&dd, "𝔡_N")? as u64)?;
    let two = Rational::from_integer(2.into());
    let scale = crate::arith::pow_rat(&two, -(b_count(bd, n, k) as i64)) * cg;
    Ok(HalfPowerNumber::from_rational(scale) * rational_half_pow(&ff, 2 * k - 1)? * prod)
}

fn require_rational(value: HalfPowerNumber, n: u64) -> Result<Rational> {
    value
        .to_rational()
        .ok_or_else(|| JflError::Inconsistent(format!("c_Φ({n}) = {value} keeps irrational terms")))
}

/// `c_Φ(N)` for odd `n`, with `N` the index `Δ_{a,α}`.
pub fn c_phi_odd(n: u64, input: &LiftInputOdd) -> Result<Rational> {
    let c_g = |m: u64| -> Result<Rational> {
        if m as usize > input.g.nmax() {
            return Err(JflError::InvalidInput(format!(
                "c_g({m}) beyond the supplied precision"
            )));
        }
        Ok(input.g.coeff(m as usize).clone())
    };
    let value = c_phi_odd_with(&input.global, input.k, input.b * input.d, n, c_g, |p| {
        input.satake(p)
    })?;
    require_rational(value, n)
}

/// `N^{(k-1)/2} Π_p l_{p,S,N}(α_p)` before the rationality check.
pub fn c_phi_even_with<F>(g: &GlobalData, k: i64, n: u64, satake: F) -> Result<HalfPowerNumber>
where
    F: Fn(u64) -> Result<SatakeParam<HalfPowerNumber>>,
{
    if n == 0 {
        return Err(JflError::InvalidInput("c_Φ(N) needs N ≥ 1".into()));
    }
    Ok(HalfPowerNumber::half_pow_int(n, k - 1) * local_product_at(g, n, k, satake)?)
}

/// `c_Φ(N)` for even `n`, with `N` the index `D_{a,α}`.
pub fn c_phi_even(n: u64, input: &LiftInputEven) -> Result<Rational> {
    let value = c_phi_even_with(&input.global, input.k, n, |p| input.satake(p))?;
    require_rational(value, n)
}

/// Coefficients of the lift for every key reached by `a ≤ a_max`, and the
/// assembled table, which must lie in `J^M`.
pub fn lift_assemble(input: &LiftInput, a_max: i64) -> Result<(JacobiMCoeffs, JacobiFourierTable)> {
    let g = input.global();
    let zero = JacobiFourierTable::zero(g.clone(), a_max);
    let mut c = BTreeMap::new();
    for &(a, mu) in zero.entries.keys() {
        let idx = disc_index(g, a, &zero.disc.reps[mu])?;
        let key = if g.is_odd() { idx.delta } else { idx.d };
        if key > 0 && !c.contains_key(&key) {
            c.insert(key, input.coefficient(key as u64)?);
        }
    }
    let m = JacobiMCoeffs::new(g.clone(), input.kappa(), c, JacobiKind::Cusp)?;
    let t = assemble_table(&m, a_max)?;
    if !jm_membership(&t) {
        return Err(JflError::Inconsistent(
            "assembled lift is not in J^M".into(),
        ));
    }
    Ok((m, t))
}

/// A table holding only the entries `c(a, α)` for the listed points.
pub fn lift_table_at(
    input: &LiftInput,
    points: &[(i64, Vec<Rational>)],
) -> Result<JacobiFourierTable> {
    let g = input.global().clone();
    let disc = disc_group(&g.lattice);
    let mut entries = BTreeMap::new();
    let mut a_max = 0;
    for (a, alpha) in points {
        check_dual(&g.lattice, alpha)?;
        let reduced: Vec<Rational> = alpha.iter().map(|x| x - x.floor()).collect();
        let mu = disc
            .reps
            .iter()
            .position(|r| *r == reduced)
            .ok_or_else(|| {
                JflError::Inconsistent("α mod L is not among the coset representatives".into())
            })?;
        let idx = disc_index(&g, *a, alpha)?;
        if idx.d <= 0 {
            return Err(JflError::InvalidInput(format!(
                "(a, α) = ({a}, {alpha:?}) is not in T⁺"
            )));
        }
        let a_red = rat_to_i64(
            &((int(idx.d) + int(g.big_d_s) * &disc.norms[mu]) / int(g.big_d_s)),
            "reduced a",
        )?;
        let key = if g.is_odd() { idx.delta } else { idx.d };
        entries.insert((a_red, mu), input.coefficient(key as u64)?);
        a_max = a_max.max(a_red);
    }
    Ok(JacobiFourierTable {
        global: g,
        disc,
        a_max,
        entries,
    })
}

/// One row of a lift table for serialization.
#[derive(Clone, Debug, Serialize)]
pub struct LiftRow {
    pub key: i64,
    pub value: String,
}

/// Keys and values of `c_Φ` as exact strings, increasing in the key.
#[must_use]
pub fn lift_rows(m: &JacobiMCoeffs) -> Vec<LiftRow> {
    m.c.iter()
        .map(|(k, v)| LiftRow {
            key: *k,
            value: crate::arith::rat_string(v),
        })
        .collect()
}
