//! Jacobi forms of lattice index in `J^M`: discriminant indices, the
//! Eisenstein coefficient `A(N)`, Fourier tables over `(a, μ)`, theta
//! decomposition and the Dirichlet-series identity for eigenforms.

mod prop12;

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    dirichlet_l_minus, factorize, fundamental_split, int, is_prime, sign_pow, HalfPowerNumber,
    QSeries, Rational,
};
use crate::error::{JflError, Result};
use crate::lattice::{disc_group, DiscGroup, EvenLattice, GlobalData};
use crate::local_factors::{l_s_poly, HPoly};

pub use prop12::{prop12_check, LParams, Prop12Report};

/// `D_{a,α} = D_S(a - S[α]/2)` and `Δ_{a,α} = det S_{a,α}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscIndex {
    pub d: i64,
    pub delta: i64,
}

pub(crate) fn rat_to_i64(x: &Rational, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(JflError::Inconsistent(format!(
            "{what} = {x} is not integral"
        )));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| JflError::TooLarge(format!("{what} exceeds i64")))
}

/// Checks `α ∈ L*`, i.e. `Sα` integral.
pub(crate) fn check_dual(s: &EvenLattice, alpha: &[Rational]) -> Result<()> {
    if alpha.len() != s.rank() {
        return Err(JflError::InvalidInput(format!(
            "α has length {}, rank is {}",
            alpha.len(),
            s.rank()
        )));
    }
    if s.apply(alpha).iter().any(|v| !v.is_integer()) {
        return Err(JflError::InvalidInput(
            "α must lie in the dual lattice L*".into(),
        ));
    }
    Ok(())
}

/// Both discriminant indices of `(a, α)`; for odd `n` asserts
/// `Δ_{a,α} = δ_S·D_{a,α}`.
pub fn disc_index(g: &GlobalData, a: i64, alpha: &[Rational]) -> Result<DiscIndex> {
    let s = &g.lattice;
    check_dual(s, alpha)?;
    let x = int(a) - s.norm(alpha) / int(2);
    let d = rat_to_i64(&(int(g.big_d_s) * &x), "D_{a,α}")?;
    let delta = rat_to_i64(&(int(2 * g.det) * &x), "Δ_{a,α}")?;
    if let Some(ds) = g.delta_s {
        if delta != ds * d {
            return Err(JflError::Inconsistent(format!(
                "Δ = {delta} but δ_S·D = {}",
                ds * d
            )));
        }
    }
    Ok(DiscIndex { d, delta })
}

/// `k = κ - [(n+1)/2]`, checking that `κ` is even.
pub fn weight_k(g: &GlobalData, kappa: i64) -> Result<i64> {
    if kappa % 2 != 0 {
        return Err(JflError::InvalidInput(format!("κ = {kappa} must be even")));
    }
    Ok(kappa - g.n.div_ceil(2) as i64)
}

/// Primes at which `l_{p,S,a}` can differ from 1.
fn relevant_primes(g: &GlobalData, a: u64) -> Vec<u64> {
    let mut ps: Vec<u64> = factorize(a * g.big_d_s as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    if !ps.contains(&2) {
        ps.insert(0, 2);
    }
    ps
}

/// `(p, l_{p,S,a})` for the primes that can contribute; the factor at the
/// next prime outside that set is checked to be 1.
pub(crate) fn local_polys(g: &GlobalData, a: u64, k: i64) -> Result<Vec<(u64, HPoly)>> {
    let ar = int(a as i64);
    let primes = relevant_primes(g, a);
    let mut out = Vec::with_capacity(primes.len());
    for &p in &primes {
        out.push((p, l_s_poly(g, p, &ar, k)?));
    }
    let outside = (3..)
        .find(|q| is_prime(*q) && !primes.contains(q))
        .expect("infinitely many primes");
    if l_s_poly(g, outside, &ar, k)? != HPoly::one() {
        return Err(JflError::Inconsistent(format!(
            "l_{{p,S,{a}}} ≠ 1 at p = {outside}"
        )));
    }
    Ok(out)
}

/// `Π_p l_{p,S,a}(p^{e/2})`.
fn local_product(g: &GlobalData, a: u64, k: i64, e: i64) -> Result<HalfPowerNumber> {
    let mut acc = HalfPowerNumber::one();
    for (p, poly) in local_polys(g, a, k)? {
        let x = HalfPowerNumber::half_pow(p, e);
        let x_inv = HalfPowerNumber::half_pow(p, -e);
        acc = acc * poly.eval(&x, &x_inv, Clone::clone);
    }
    Ok(acc)
}

/// `𝔣^{e/2}` for a positive rational `𝔣`.
pub(crate) fn rational_half_pow(f: &Rational, e: i64) -> Result<HalfPowerNumber> {
    let num = rat_to_i64(&Rational::from_integer(f.numer().clone()), "numerator")?;
    let den = rat_to_i64(&Rational::from_integer(f.denom().clone()), "denominator")?;
    if num <= 0 {
        return Err(JflError::InvalidInput(format!("{f} must be positive")));
    }
    Ok(
        HalfPowerNumber::half_pow_int(num as u64, e)
            * HalfPowerNumber::half_pow_int(den as u64, -e),
    )
}

/// The Eisenstein coefficient `A(N)`, indexed by `D_{a,α}`, for `N ≥ 1`.
pub fn eisenstein_a(g: &GlobalData, kappa: i64, n: u64) -> Result<Rational> {
    let k = weight_k(g, kappa)?;
    if k < 2 {
        return Err(JflError::InvalidInput(format!(
            "k = κ - [(n+1)/2] = {k} must be at least 2"
        )));
    }
    if n == 0 {
        return Err(JflError::InvalidInput("A(N) needs N ≥ 1".into()));
    }
    let value = if let Some(ds) = g.delta_s {
        let m = ds as u64 * n;
        let disc = sign_pow(k) * m as i64;
        let l = dirichlet_l_minus(k as usize, disc)?;
        let (_, f) = fundamental_split(m, k);
        // 𝔣 has negative exponents exactly where the local factor vanishes.
        let f_pow = rational_half_pow(&f, 2 * k - 1)?;
        let prod = local_product(g, m, k, 2 * k - 1)?;
        HalfPowerNumber::from_rational(l) * f_pow * prod
    } else {
        HalfPowerNumber::half_pow_int(n, k - 1) * local_product(g, n, k, k - 1)?
    };
    value
        .to_rational()
        .ok_or_else(|| JflError::Inconsistent(format!("A({n}) = {value} is not rational")))
}

/// Provenance of a coefficient set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JacobiKind {
    Eisenstein,
    Cusp,
}

/// Coefficients of a form in `J^M_{κ,S}`, keyed by `Δ_{a,α}` for odd `n`
/// and by `D_{a,α}` for even `n`.
#[derive(Clone, Debug)]
pub struct JacobiMCoeffs {
    pub global: GlobalData,
    pub kappa: i64,
    pub c: BTreeMap<i64, Rational>,
    pub kind: JacobiKind,
}

impl JacobiMCoeffs {
    pub fn new(
        global: GlobalData,
        kappa: i64,
        c: BTreeMap<i64, Rational>,
        kind: JacobiKind,
    ) -> Result<Self> {
        weight_k(&global, kappa)?;
        Ok(Self {
            global,
            kappa,
            c,
            kind,
        })
    }

    /// The key of `(a, α)`.
    pub fn key(&self, a: i64, alpha: &[Rational]) -> Result<i64> {
        let idx = disc_index(&self.global, a, alpha)?;
        Ok(if self.global.is_odd() {
            idx.delta
        } else {
            idx.d
        })
    }

    /// Eisenstein series coefficients `A(D)` for `1 ≤ D ≤ d_max`, stored at
    /// their keys; `c(0) = 1`.
    pub fn eisenstein(global: GlobalData, kappa: i64, d_max: u64) -> Result<Self> {
        let scale = global.delta_s.unwrap_or(1);
        let mut c = BTreeMap::new();
        c.insert(0, Rational::one());
        for d in 1..=d_max {
            c.insert(scale * d as i64, eisenstein_a(&global, kappa, d)?);
        }
        Self::new(global, kappa, c, JacobiKind::Eisenstein)
    }

    #[must_use]
    pub fn get(&self, key: i64) -> Option<&Rational> {
        self.c.get(&key)
    }
}

/// Fourier coefficients `c(a, μ)` for `μ` running over the coset
/// representatives of `L*/L` and `S[μ]/2 ≤ a ≤ a_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFourierTable {
    pub global: GlobalData,
    pub disc: DiscGroup,
    pub a_max: i64,
    pub entries: BTreeMap<(i64, usize), Rational>,
}

/// Smallest integer `a ≥ S[μ]/2`.
fn a_min(norm: &Rational) -> i64 {
    norm.ceil().to_integer().to_i64().expect("small norm")
}

impl JacobiFourierTable {
    /// All-zero table.
    #[must_use]
    pub fn zero(global: GlobalData, a_max: i64) -> Self {
        let disc = disc_group(&global.lattice);
        let mut entries = BTreeMap::new();
        for (i, q) in disc.norms.iter().enumerate() {
            for a in a_min(q)..=a_max {
                entries.insert((a, i), Rational::zero());
            }
        }
        Self {
            global,
            disc,
            a_max,
            entries,
        }
    }

    /// `D_{a,μ}` for the coset with index `mu`.
    pub fn d_index(&self, a: i64, mu: usize) -> Result<i64> {
        disc_index(&self.global, a, &self.disc.reps[mu]).map(|i| i.d)
    }

    /// Index of the coset of `α ∈ L*`.
    pub fn coset_of(&self, alpha: &[Rational]) -> Result<usize> {
        check_dual(&self.global.lattice, alpha)?;
        let reduced: Vec<Rational> = alpha.iter().map(|x| x - x.floor()).collect();
        self.disc
            .reps
            .iter()
            .position(|r| *r == reduced)
            .ok_or_else(|| {
                JflError::Inconsistent("α mod L is not among the coset representatives".into())
            })
    }

    /// `c(a, α)` for any `α ∈ L*`, read from the entry with the same coset and
    /// the same `D`.
    pub fn lookup(&self, a: i64, alpha: &[Rational]) -> Result<Rational> {
        let mu = self.coset_of(alpha)?;
        let d = disc_index(&self.global, a, alpha)?.d;
        let num = int(d) + int(self.global.big_d_s) * &self.disc.norms[mu];
        let a_red = rat_to_i64(&(num / int(self.global.big_d_s)), "reduced a")?;
        self.entries.get(&(a_red, mu)).cloned().ok_or_else(|| {
            JflError::InvalidInput(format!(
                "table has no entry (a = {a_red}, μ #{mu}); a_max = {}",
                self.a_max
            ))
        })
    }
}

/// Entry `(a, μ)` is `c(key(a, μ))`; absent keys read as zero.
pub fn assemble_table(m: &JacobiMCoeffs, a_max: i64) -> Result<JacobiFourierTable> {
    let mut t = JacobiFourierTable::zero(m.global.clone(), a_max);
    let keys: Vec<(i64, usize)> = t.entries.keys().copied().collect();
    for (a, mu) in keys {
        let key = m.key(a, &t.disc.reps[mu])?;
        if let Some(v) = m.get(key) {
            t.entries.insert((a, mu), v.clone());
        }
    }
    Ok(t)
}

/// Per-coset series `φ_μ = Σ_a c(a, μ) q^{a - S[μ]/2}`, with `q^{1/D_S}` as
/// the series variable, so the exponent of `(a, μ)` is `D_{a,μ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaDecomp {
    pub components: Vec<QSeries>,
    pub a_max: i64,
}

#[must_use]
pub fn theta_decompose(t: &JacobiFourierTable) -> ThetaDecomp {
    let den = t.global.big_d_s;
    let nmax = (den * t.a_max).max(0) as usize;
    let mut components = vec![QSeries::zero(den as u32, nmax); t.disc.len()];
    for (&(a, mu), v) in &t.entries {
        let d = t.d_index(a, mu).expect("table entries have valid indices");
        components[mu].set_coeff(d as usize, v.clone());
    }
    ThetaDecomp {
        components,
        a_max: t.a_max,
    }
}

/// Inverse of [`theta_decompose`].
pub fn theta_reassemble(global: &GlobalData, th: &ThetaDecomp) -> Result<JacobiFourierTable> {
    let mut t = JacobiFourierTable::zero(global.clone(), th.a_max);
    if th.components.len() != t.disc.len() {
        return Err(JflError::InvalidInput(format!(
            "{} components for {} cosets",
            th.components.len(),
            t.disc.len()
        )));
    }
    let keys: Vec<(i64, usize)> = t.entries.keys().copied().collect();
    for (a, mu) in keys {
        let d = t.d_index(a, mu)? as usize;
        t.entries
            .insert((a, mu), th.components[mu].coeff(d).clone());
    }
    for (mu, comp) in th.components.iter().enumerate() {
        let shift = int(global.big_d_s) * &t.disc.norms[mu];
        for j in 0..=comp.nmax() {
            if comp.coeff(j).is_zero() {
                continue;
            }
            let a = (int(j as i64) + &shift) / int(global.big_d_s);
            if !a.is_integer() || a > int(th.a_max) {
                return Err(JflError::InvalidInput(format!(
                    "component {mu} has a term at q^({j}/D_S) off its lattice"
                )));
            }
        }
    }
    Ok(t)
}

/// True iff `c(a, μ)` depends only on `D_{a,μ}`; this is the condition
/// `φ_μ = φ_ν` whenever `S[μ]/2 ≡ S[ν]/2 mod 1`.
#[must_use]
pub fn jm_membership(t: &JacobiFourierTable) -> bool {
    let mut seen: BTreeMap<i64, &Rational> = BTreeMap::new();
    for (&(a, mu), v) in &t.entries {
        let d = t.d_index(a, mu).expect("table entries have valid indices");
        match seen.get(&d) {
            Some(w) if *w != v => return false,
            Some(_) => {}
            None => {
                seen.insert(d, v);
            }
        }
    }
    true
}
