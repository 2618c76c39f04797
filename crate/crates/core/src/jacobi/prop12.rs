//! Coefficientwise check of the Dirichlet-series identity
//! `Σ_m c(am², αm) m^{-(s+κ-1-n/2)} Π_p B_{S̃,p}(p^{-s-1/2})/B_{S,p}(p^{-s})
//!  = c(a, α) L(φ, s) × (L(s+1/2, ψ)⁻¹ or ζ(2s)⁻¹)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{disc_index, JacobiFourierTable};
use crate::arith::{
    fundamental_discriminant, int, kronecker_std, primes_up_to, sign_pow, HalfPowerNumber, Rational,
};
use crate::error::{JflError, Result};
use crate::lattice::{extended_gram, global_data, GlobalData};
use crate::local_factors::{b_s_poly, HPoly};

/// Euler factors `P_p(X)` with `L(φ, s) = Π_p P_p(p^{-s})⁻¹`.
#[derive(Clone, Debug, Default)]
pub struct LParams {
    pub factors: BTreeMap<u64, HPoly>,
}

impl LParams {
    /// Factors for every prime up to `m_max` from a closure.
    pub fn from_fn(m_max: u64, f: impl Fn(u64) -> HPoly) -> Self {
        Self {
            factors: primes_up_to(m_max).into_iter().map(|p| (p, f(p))).collect(),
        }
    }
}

/// Both sides of the identity for `m = 1..=m_max` (index 0 unused).
#[derive(Clone, Debug)]
pub struct Prop12Report {
    pub m_max: u64,
    pub lhs: Vec<HalfPowerNumber>,
    pub rhs: Vec<HalfPowerNumber>,
    pub mismatches: Vec<u64>,
}

impl Prop12Report {
    #[must_use]
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

type Series = Vec<HalfPowerNumber>;

/// Coefficients of `P` in degrees `0..=deg`; negative exponents are an error.
fn poly_coeffs(poly: &HPoly, deg: usize) -> Result<Series> {
    if !poly.is_polynomial() {
        return Err(JflError::InvalidInput(
            "Euler factor has negative powers of X".into(),
        ));
    }
    Ok((0..=deg).map(|e| poly.coeff(e as i64)).collect())
}

fn mul_trunc(a: &Series, b: &Series) -> Series {
    let deg = a.len().min(b.len());
    let mut out = vec![HalfPowerNumber::zero(); deg];
    for (i, x) in a.iter().enumerate().take(deg) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Power-series inverse of `a`, whose constant term must be invertible.
fn inverse(a: &Series) -> Result<Series> {
    let c0 = a[0].inv().ok_or_else(|| {
        JflError::InvalidInput("Euler factor has non-invertible constant term".into())
    })?;
    let mut out = vec![HalfPowerNumber::zero(); a.len()];
    out[0] = c0.clone();
    for n in 1..a.len() {
        let mut s = HalfPowerNumber::zero();
        for i in 1..=n {
            s = s + a[i].clone() * out[n - i].clone();
        }
        out[n] = -(s * c0.clone());
    }
    Ok(out)
}

fn max_power(p: u64, m_max: u64) -> usize {
    let mut e = 0;
    let mut q = p;
    while q <= m_max {
        e += 1;
        q = q.saturating_mul(p);
    }
    e
}

/// Dirichlet series `Π_p Σ_e local_p[e] p^{-es}` truncated at `m_max`.
fn euler_product(m_max: u64, local: impl Fn(u64, usize) -> Result<Series>) -> Result<Series> {
    let n = m_max as usize;
    let mut out = vec![HalfPowerNumber::zero(); n + 1];
    out[1] = HalfPowerNumber::one();
    for p in primes_up_to(m_max) {
        let e_max = max_power(p, m_max);
        let lp = local(p, e_max)?;
        let prev = out.clone();
        for m in 1..=n {
            let mut e = 0;
            let mut rest = m;
            while rest % p as usize == 0 {
                rest /= p as usize;
                e += 1;
            }
            if e > 0 {
                out[m] = prev[rest].clone() * lp[e].clone();
            }
        }
    }
    Ok(out)
}

fn convolve(a: &Series, b: &Series) -> Series {
    let n = a.len() - 1;
    let mut out = vec![HalfPowerNumber::zero(); n + 1];
    for i in 1..=n {
        if a[i].is_zero() {
            continue;
        }
        for j in 1..=n / i {
            out[i * j] = out[i * j].clone() + a[i].clone() * b[j].clone();
        }
    }
    out
}

/// `P(cX)` for `c = p^{e/2}`.
fn twist(poly: &HPoly, p: u64, e: i64) -> HPoly {
    poly.substitute(
        &HalfPowerNumber::half_pow(p, e),
        &HalfPowerNumber::half_pow(p, -e),
        1,
    )
}

/// Checks the identity for `m ≤ m_max`; needs `S_{a,α}` maximal and table
/// entries up to `a·m_max²`.
pub fn prop12_check(
    t: &JacobiFourierTable,
    kappa: i64,
    l: &LParams,
    a: i64,
    alpha: &[Rational],
    m_max: u64,
) -> Result<Prop12Report> {
    let g: &GlobalData = &t.global;
    if m_max == 0 {
        return Err(JflError::InvalidInput("m_max must be positive".into()));
    }
    let idx = disc_index(g, a, alpha)?;
    if idx.d <= 0 {
        return Err(JflError::InvalidInput(
            "(a, α) must satisfy a > S[α]/2".into(),
        ));
    }
    let ext = extended_gram(&g.lattice, a, alpha)?;
    let g_ext = global_data(&ext)?;
    let n = m_max as usize;
    let exponent = -(2 * kappa - 2 - g.n as i64);

    let mut first = vec![HalfPowerNumber::zero(); n + 1];
    for m in 1..=n {
        let mi = m as i64;
        let scaled: Vec<Rational> = alpha.iter().map(|x| x * int(mi)).collect();
        let c = t.lookup(a * mi * mi, &scaled)?;
        first[m] =
            HalfPowerNumber::from_rational(c) * HalfPowerNumber::half_pow_int(m as u64, exponent);
    }
    let ratio = euler_product(m_max, |p, e| {
        let num = twist(&b_s_poly(&g_ext.local(p), g_ext.is_odd()), p, -1);
        let den = b_s_poly(&g.local(p), g.is_odd());
        Ok(mul_trunc(
            &poly_coeffs(&num, e)?,
            &inverse(&poly_coeffs(&den, e)?)?,
        ))
    })?;
    let lhs = convolve(&first, &ratio);

    let l_phi = euler_product(m_max, |p, e| {
        let f = l.factors.get(&p).ok_or_else(|| {
            JflError::InvalidInput(format!("no Euler factor supplied at p = {p}"))
        })?;
        inverse(&poly_coeffs(f, e)?)
    })?;
    let correction = if g.is_odd() {
        let disc = fundamental_discriminant(sign_pow(g.n.div_ceil(2) as i64) * idx.delta);
        euler_product(m_max, |p, e| {
            let psi = if disc == 1 {
                1
            } else {
                kronecker_std(disc, p as i64)
            };
            let f = HPoly::one()
                - HPoly::monomial(
                    HalfPowerNumber::half_pow(p, -1).scale(&int(i64::from(psi))),
                    1,
                );
            poly_coeffs(&f, e)
        })?
    } else {
        euler_product(m_max, |_, e| {
            poly_coeffs(&(HPoly::one() - HPoly::x_pow(2)), e)
        })?
    };
    let base = HalfPowerNumber::from_rational(t.lookup(a, alpha)?);
    let rhs: Series = convolve(&l_phi, &correction)
        .into_iter()
        .map(|x| x * base.clone())
        .collect();

    let mismatches = (1..=m_max)
        .filter(|&m| lhs[m as usize] != rhs[m as usize])
        .collect();
    Ok(Prop12Report {
        m_max,
        lhs,
        rhs,
        mismatches,
    })
}
