//! Local Laurent polynomials: `l_{e,ε}`, `h_{e,ε}`, `λ_{p,a}`, `l_{p,S,a}`,
//! `B_{S,p}`, `ϱ_{p,S}`, `γ_{p,h}`, the Siegel series of a maximal lattice,
//! the normalization `F̃_p` and the table of `Ĩ_{p,S,a,α}`.

mod siegel_norm;
mod table1;

use num_traits::{One, Zero};

use crate::arith::{
    frak_f_p, int, ord_p_rat, psi_bar_k, residue_symbol_rat, sign_pow, HalfPowerNumber,
    LaurentPoly, Rational,
};
use crate::error::{JflError, Result};
use crate::lattice::{GlobalData, LocalData, PrimeClass};

pub use siegel_norm::{f_tilde, fp_closed_maximal, gamma_poly, prop92_rhs, RationalFunction};
pub use table1::{table1_lookup, TABLE1_ROWS};

/// Laurent polynomials with coefficients in `Q[√p]`.
pub type HPoly = LaurentPoly<HalfPowerNumber>;

pub(crate) fn hq(r: Rational) -> HalfPowerNumber {
    HalfPowerNumber::from_rational(r)
}

pub(crate) fn hi(n: i64) -> HalfPowerNumber {
    HalfPowerNumber::from_int(n)
}

/// `p^{e/2}`.
pub(crate) fn ph(p: u64, e: i64) -> HalfPowerNumber {
    HalfPowerNumber::half_pow(p, e)
}

/// `l_{e,ε}(X) = Σ_{i=0}^{e} ε^{e-i} X^{e-2i}`, zero for `e < 0`.
#[must_use]
pub fn l_poly(e: i64, eps: i32) -> HPoly {
    if e < 0 {
        return HPoly::zero();
    }
    HPoly::from_terms((0..=e).map(|i| (e - 2 * i, hi(if eps == -1 { sign_pow(e - i) } else { 1 }))))
}

/// `l_e = l_{e,1}`.
#[must_use]
pub fn l_plain(e: i64) -> HPoly {
    l_poly(e, 1)
}

/// `h_{e,ε} = εX^e + X^{-e}` for `e > 0`, `(1+ε)/2` for `e = 0`, zero
/// otherwise.
#[must_use]
pub fn h_poly(e: i64, eps: i32) -> HPoly {
    match e.cmp(&0) {
        std::cmp::Ordering::Less => HPoly::zero(),
        std::cmp::Ordering::Equal => HPoly::constant(hi(i64::from((1 + eps) / 2))),
        std::cmp::Ordering::Greater => {
            HPoly::from_terms([(e, hi(i64::from(eps))), (-e, HalfPowerNumber::one())])
        }
    }
}

/// `λ_{p,a} = l_{𝔣_p(a)} - ψ̄_p((-1)^k a) p^{-1/2} l_{𝔣_p(a)-1}`.
#[must_use]
pub fn lambda_poly(p: u64, a: &Rational, k: i64) -> HPoly {
    assert!(!a.is_zero(), "λ_{{p,a}} needs a ≠ 0");
    let f = frak_f_p(a, p, k);
    let psi = psi_bar_k(a, p, k);
    let tail = l_plain(f - 1).scale(&ph(p, -1).scale(&int(i64::from(psi))));
    l_plain(f) - tail
}

/// The six-case `l_{p,S,a}`, selected by the class of `p` and the parity
/// of `n`.
pub fn l_s_poly(g: &GlobalData, p: u64, a: &Rational, k: i64) -> Result<HPoly> {
    if a.is_zero() {
        return Err(JflError::InvalidInput("l_{p,S,a} needs a ≠ 0".into()));
    }
    let local = g.local(p);
    let pr = int(p as i64);
    let p2 = &pr * &pr;
    Ok(if g.is_odd() {
        match local.class {
            PrimeClass::S0 => lambda_poly(p, a, k),
            PrimeClass::S1 => {
                let second = lambda_poly(p, &(a / &p2), k)
                    .scale(&ph(p, 1).scale(&int(i64::from(local.eta_p))));
                lambda_poly(p, a, k) + second
            }
            PrimeClass::S2 => {
                let b = a / &p2;
                let sym = residue_symbol_rat(&(int(sign_pow(k)) * &b), p);
                let second = lambda_poly(p, &b, k).scale(&ph(p, 1).scale(&int(i64::from(sym))));
                let third = lambda_poly(p, &(&b / &p2), k).scale(&hi(p as i64));
                lambda_poly(p, a, k) - second - third
            }
        }
    } else {
        let ord = ord_p_rat(a, p);
        let xi = local.xi_p.expect("even rank");
        match local.class {
            PrimeClass::S0 => l_poly(ord, xi),
            PrimeClass::S1 => {
                let arg = int(sign_pow(k) * g.d_s) * a;
                let eps = local.eta_p_half * g.chi_low_s_p(p, &arg)?;
                h_poly(ord, eps)
            }
            PrimeClass::S2 => {
                l_poly(ord, xi) - l_poly(ord - 2, xi).scale(&hi(i64::from(xi) * p as i64))
            }
        }
    })
}

/// `B_{S,p}(X)` from the Dirichlet-series identity for `φ(am², αm)`.
#[must_use]
pub fn b_s_poly(local: &LocalData, odd: bool) -> HPoly {
    let p = local.p;
    let x = HPoly::x();
    let one = HPoly::one();
    match (local.class, odd) {
        (PrimeClass::S0, _) | (PrimeClass::S1, false) => one,
        (PrimeClass::S1, true) => one + x.scale(&ph(p, 1).scale(&int(i64::from(local.eta_p)))),
        (PrimeClass::S2, true) => one - HPoly::monomial(hi(p as i64), 2),
        (PrimeClass::S2, false) => {
            let xi = i64::from(local.xi_p.expect("even rank"));
            (HPoly::one() - x.scale(&hi(xi * p as i64))) * (HPoly::one() - x.scale(&hi(xi)))
        }
    }
}

/// `ϱ_{p,S}(X)`.
#[must_use]
pub fn rho_poly(local: &LocalData, odd: bool) -> HPoly {
    let p = local.p;
    let one = HPoly::one();
    match (local.class, odd) {
        (PrimeClass::S2, _) => one,
        (PrimeClass::S0, true) => one - HPoly::monomial(ph(p, -2), 2),
        (PrimeClass::S1, true) => {
            one - HPoly::monomial(ph(p, -1).scale(&int(i64::from(local.eta_p))), 1)
        }
        (_, false) => {
            let xi = i64::from(local.xi_p.expect("even rank"));
            one - HPoly::monomial(ph(p, -2).scale(&int(xi)), 1)
        }
    }
}
