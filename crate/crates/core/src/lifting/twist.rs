//! The forms `f_P`, `f~` and `f*` attached to a primitive form of
//! nebentypus `χ_S` (even rank), as coefficient sequences over any ring
//! with a conjugation.

use crate::arith::{int, pow_rat, sign_pow, Ring};
use crate::error::{JflError, Result};
use crate::lattice::GlobalData;

/// `p^{ord_p m}`.
fn p_part(m: u64, p: u64) -> u64 {
    let mut out = 1;
    let mut rest = m;
    while rest.is_multiple_of(p) {
        rest /= p;
        out *= p;
    }
    out
}

fn coeff<R: Ring>(c: &[R], m: u64) -> Result<R> {
    c.get(m as usize)
        .cloned()
        .ok_or_else(|| JflError::InvalidInput(format!("c_f({m}) beyond the supplied precision")))
}

fn require_even(g: &GlobalData) -> Result<()> {
    if g.is_odd() {
        return Err(JflError::InvalidInput(
            "f_P, f~ and f* are defined for even n".into(),
        ));
    }
    Ok(())
}

/// Coefficients of `f_P` for `m ≤ m_max`:
/// `c_f(m'_P m') conj(c_f(m_P)) Π_{p∈P} χ̲_{S,p}(m)`, with `m_P` the
/// `P`-part of `m`, `m'_P` its `(𝔖₁ - P)`-part and `m'` the rest.
/// `P ⊂ 𝔖₂` returns `f` itself.
pub fn f_p_coeffs<R: Ring>(
    g: &GlobalData,
    c: &[R],
    conj: impl Fn(&R) -> R,
    p_set: &[u64],
    m_max: u64,
) -> Result<Vec<R>> {
    require_even(g)?;
    if p_set.iter().all(|p| g.s2.contains(p)) {
        return (0..=m_max).map(|m| coeff(c, m)).collect();
    }
    if let Some(p) = p_set.iter().find(|p| !g.s1.contains(p)) {
        return Err(JflError::InvalidInput(format!(
            "P must be a subset of 𝔖₁; {p} is not"
        )));
    }
    let mut out = vec![R::zero()];
    for m in 1..=m_max {
        let m_p: u64 = p_set.iter().map(|&p| p_part(m, p)).product();
        let mut value = coeff(c, m / m_p)? * conj(&coeff(c, m_p)?);
        for &p in p_set {
            let chi = g.chi_low_s_p(p, &int(m as i64))?;
            value = value * R::from_rational(&int(i64::from(chi)));
        }
        out.push(value);
    }
    Ok(out)
}

/// `(-1)^k d⁻¹ d_S`.
fn twist_arg(g: &GlobalData, k: i64, d: u64) -> Result<i64> {
    if d == 0 || g.d_s % d as i64 != 0 {
        return Err(JflError::InvalidInput(format!(
            "d = {d} must divide d_S = {}",
            g.d_s
        )));
    }
    Ok(sign_pow(k) * g.d_s / d as i64)
}

/// Coefficients of `f~` from the product formula
/// `Π_{p∈𝔖₁} (c_f(m_p) + η_p(S/2) χ̲_{S,p}((-1)^k d⁻¹d_S m) conj(c_f(m_p))) c_f(m')`.
pub fn f_sim_coeffs<R: Ring>(
    g: &GlobalData,
    k: i64,
    d: u64,
    c: &[R],
    conj: impl Fn(&R) -> R,
    m_max: u64,
) -> Result<Vec<R>> {
    require_even(g)?;
    let x = twist_arg(g, k, d)?;
    let mut out = vec![R::zero()];
    for m in 1..=m_max {
        let mut rest = m;
        let mut value = R::one();
        for &p in &g.s1 {
            let mp = p_part(m, p);
            rest /= mp;
            let sign = g.local(p).eta_p_half * g.chi_low_s_p(p, &int(x * m as i64))?;
            let cm = coeff(c, mp)?;
            value = value * (cm.clone() + conj(&cm) * R::from_rational(&int(i64::from(sign))));
        }
        out.push(value * coeff(c, rest)?);
    }
    Ok(out)
}

/// Coefficients of `f~ = Σ_{P⊂𝔖₁} η_P(S/2) χ_{S,P}((-1)^k d⁻¹d_S) f_P`.
pub fn f_sim_by_sum<R: Ring>(
    g: &GlobalData,
    k: i64,
    d: u64,
    c: &[R],
    conj: impl Fn(&R) -> R + Copy,
    m_max: u64,
) -> Result<Vec<R>> {
    require_even(g)?;
    let x = twist_arg(g, k, d)?;
    let s1 = &g.s1;
    let mut out = vec![R::zero(); m_max as usize + 1];
    for mask in 0u32..(1 << s1.len()) {
        let p_set: Vec<u64> = s1
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let mut sign = 1i64;
        for &p in &p_set {
            sign *= i64::from(g.local(p).eta_p_half) * i64::from(g.chi_s_p(p, x)?);
        }
        if sign == 0 {
            continue;
        }
        let fp = if p_set.is_empty() {
            (0..=m_max)
                .map(|m| coeff(c, m))
                .collect::<Result<Vec<_>>>()?
        } else {
            f_p_coeffs(g, c, conj, &p_set, m_max)?
        };
        let s = R::from_rational(&int(sign));
        for (o, v) in out.iter_mut().zip(fp).skip(1) {
            *o = o.clone() + s.clone() * v;
        }
    }
    Ok(out)
}

/// `f* = f~ | Π_{p | d⁻¹d_S} Q(p)` with `f | Q(p) = Σ (c(pm) - ξ_p p^k c(m/p)) q^m`;
/// each application shortens the available range by the factor `p`.
pub fn f_star_coeffs<R: Ring>(g: &GlobalData, k: i64, d: u64, sim: &[R]) -> Result<Vec<R>> {
    require_even(g)?;
    let x = twist_arg(g, k, d)?;
    let mut cur = sim.to_vec();
    for (p, _) in crate::arith::factorize(x.unsigned_abs()) {
        let xi = g.local(p).xi_p.expect("even rank");
        let pk = R::from_rational(&(int(i64::from(xi)) * pow_rat(&int(p as i64), k)));
        let top = (cur.len() - 1) as u64 / p;
        let mut next = vec![R::zero(); top as usize + 1];
        for m in 1..=top {
            let mut v = cur[(p * m) as usize].clone();
            if m % p == 0 {
                v = v - pk.clone() * cur[(m / p) as usize].clone();
            }
            next[m as usize] = v;
        }
        cur = next;
    }
    Ok(cur)
}
