//! Siegel series factors: `γ_{p,h}`, the closed form of `f_p(S/2; X)` for
//! maximal `S`, the normalization `F̃_p(h; X)` and the right-hand side it
//! is compared with.

use num_traits::{One, Zero};

use super::{hq, l_s_poly, ph, HPoly};
use crate::arith::{frak_f_p, int, ord_p_rat, pow_rat, LaurentPoly, Rational};
use crate::error::{JflError, Result};
use crate::lattice::{GlobalData, PrimeClass};

type QPoly = LaurentPoly<Rational>;

/// `num / den`, both polynomials in `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: QPoly,
    pub den: QPoly,
}

fn one_minus(c: Rational, e: i64) -> QPoly {
    QPoly::one() - QPoly::monomial(c, e)
}

/// `Π_{j=1}^{m} (1 - p^{2j} X²)`.
fn even_product(p: u64, m: i64) -> QPoly {
    let pr = int(p as i64);
    (1..=m).fold(QPoly::one(), |acc, j| {
        acc * one_minus(pow_rat(&pr, 2 * j), 2)
    })
}

/// `γ_{p,h}(X)` for `h` of size `ℓ`; `xi` is `ξ_p(h)`, used only for even `ℓ`.
#[must_use]
pub fn gamma_poly(p: u64, ell: usize, xi: i32) -> RationalFunction {
    let l = ell as i64;
    let pr = int(p as i64);
    if l % 2 == 0 {
        RationalFunction {
            num: one_minus(int(1), 1) * even_product(p, l / 2),
            den: one_minus(int(i64::from(xi)) * pow_rat(&pr, l / 2), 1),
        }
    } else {
        RationalFunction {
            num: one_minus(int(1), 1) * even_product(p, (l - 1) / 2),
            den: QPoly::one(),
        }
    }
}

/// Closed form of `f_p(S/2; X)` for a maximal lattice `S`.
#[must_use]
pub fn fp_closed_maximal(g: &GlobalData, p: u64) -> QPoly {
    let local = g.local(p);
    let n = g.n as i64;
    let s = local.s_p as i64;
    let pr = int(p as i64);
    let base = one_minus(int(1), 1);
    if g.is_odd() {
        if s == 1 {
            let eta = int(i64::from(local.eta_p));
            base * (QPoly::one() + QPoly::monomial(eta * pow_rat(&pr, (n + 1) / 2), 1))
                * even_product(p, (n - 1) / 2)
        } else {
            base * even_product(p, (n + s - 1) / 2)
        }
    } else if s == 1 {
        base * even_product(p, n / 2)
    } else {
        let xi = i64::from(local.xi_p.expect("even rank"));
        let sign = if (s / 2) % 2 == 0 { 1 } else { -1 };
        let lin = QPoly::one() + QPoly::monomial(int(sign * xi) * pow_rat(&pr, (n + s) / 2), 1);
        base * lin * even_product(p, (n + s) / 2 - 1)
    }
}

/// `F̃_p(h; X)` from `F_p(h; X)`, for `h` of size `ℓ` with `det(2h) = det2h`:
/// `X^{-𝔣_p(det 2h)} F_p(p^{-(ℓ+1)/2} X)` for even `ℓ` and
/// `X^{-ord_p(det(2h)/2)} F_p(p^{-(ℓ+1)/2} X²)` for odd `ℓ`.
pub fn f_tilde(ell: usize, det2h: &Rational, fp: &QPoly, p: u64) -> Result<HPoly> {
    if !fp.is_polynomial() {
        return Err(JflError::InvalidInput("F_p must be a polynomial".into()));
    }
    let l = ell as i64;
    let mut out = HPoly::zero();
    if l % 2 == 0 {
        let shift = frak_f_p(det2h, p, l / 2);
        for (&e, c) in fp.terms() {
            out.add_term(e - shift, hq(c.clone()) * ph(p, -(l + 1) * e));
        }
    } else {
        let shift = ord_p_rat(&(det2h / int(2)), p);
        for (&e, c) in fp.terms() {
            out.add_term(
                2 * e - shift,
                hq(c * pow_rat(&int(p as i64), -((l + 1) / 2) * e)),
            );
        }
    }
    Ok(out)
}

/// `l_{p,S,N}(X)`, multiplied by `X⁻¹ - ξ_p(S) X` for even `n` and
/// `p ∈ 𝔖₂`; `N` is `Δ_{a,α}` for odd `n` and `D_{a,α}` for even `n`.
pub fn prop92_rhs(g: &GlobalData, p: u64, big_n: &Rational, k: i64) -> Result<HPoly> {
    let l = l_s_poly(g, p, big_n, k)?;
    if g.is_odd() || g.class(p) != PrimeClass::S2 {
        return Ok(l);
    }
    let xi = int(i64::from(g.local(p).xi_p.expect("even rank")));
    let factor = HPoly::from_terms([(-1, hq(int(1))), (1, hq(-xi))]);
    Ok(l * factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let g1 = gamma_poly(3, 1, 0);
        assert_eq!(g1.num, one_minus(int(1), 1));
        let g2 = gamma_poly(3, 2, 0);
        assert_eq!(g2.num, one_minus(int(1), 1) * one_minus(int(9), 2));
        assert_eq!(g2.den, QPoly::one());
        let g3 = gamma_poly(3, 3, 1);
        assert_eq!(g3.num, one_minus(int(1), 1) * one_minus(int(9), 2));
    }

    #[test]
    fn f_tilde_unimodular() {
        let one = QPoly::one();
        assert_eq!(f_tilde(1, &int(2), &one, 3).unwrap(), HPoly::one());
        assert_eq!(f_tilde(2, &int(3), &one, 2).unwrap(), HPoly::one());
    }
}
