//! Evaluation of local Laurent polynomials at Satake parameters.
//!
//! For an unramified prime the pair `{α, c/α}` enters only through the trace
//! `u = α + c α⁻¹`, and every polynomial that is invariant under
//! `X ↦ c X⁻¹` is a polynomial in `u`; `α` itself is never formed.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{int, HalfPowerNumber, QSeries, Rational, Ring};
use crate::error::{JflError, Result};
use crate::local_factors::HPoly;

/// Satake data at one prime.
#[derive(Clone, Debug, PartialEq)]
pub enum SatakeParam<R> {
    /// The pair `{α, c/α}` through `u = α + c α⁻¹`, `c = ±1`.
    Pair { trace: R, c: i32 },
    /// A single value `α` together with `α⁻¹`.
    Single { alpha: R, alpha_inv: R },
}

/// `P(α)` for a Laurent polynomial `P` with coefficients in `Q[√p]`.
pub fn satake_eval<R: Ring>(
    poly: &HPoly,
    param: &SatakeParam<R>,
    embed: impl Fn(&HalfPowerNumber) -> R,
) -> Result<R> {
    match param {
        SatakeParam::Single { alpha, alpha_inv } => Ok(poly.eval(alpha, alpha_inv, embed)),
        SatakeParam::Pair { trace, c } => {
            let top = poly.terms().keys().map(|e| e.abs()).max().unwrap_or(0);
            for j in 1..=top {
                let cj = if *c == -1 && j % 2 == 1 {
                    -poly.coeff(j)
                } else {
                    poly.coeff(j)
                };
                if poly.coeff(-j) != cj {
                    return Err(JflError::Inconsistent(format!(
                        "polynomial is not invariant under X ↦ {c}/X (degree {j})"
                    )));
                }
            }
            // W_j = X^j + c^j X^{-j}: W_0 = 2, W_1 = u, W_j = u W_{j-1} - c W_{j-2}.
            let cr = R::from_rational(&int(i64::from(*c)));
            let mut acc = embed(&poly.coeff(0));
            let mut prev = R::one() + R::one();
            let mut cur = trace.clone();
            for j in 1..=top {
                let pj = poly.coeff(j);
                if !pj.is_zero() {
                    acc = acc + embed(&pj) * cur.clone();
                }
                let next = trace.clone() * cur.clone() - cr.clone() * prev;
                prev = cur;
                cur = next;
            }
            Ok(acc)
        }
    }
}

/// `l_e(α) = Σ_{i=0}^{e} α^{e-2i}` through `l_e = u l_{e-1} - l_{e-2}`.
#[must_use]
pub fn l_by_recurrence<R: Ring>(e: i64, trace: &R) -> R {
    if e < 0 {
        return R::zero();
    }
    let mut prev = R::zero();
    let mut cur = R::one();
    for _ in 0..e {
        let next = trace.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// A normalized Hecke eigenform given by its rational Fourier coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    /// Weight of `f`: `2k` for odd `n`, `k` for even `n`.
    pub weight: i64,
    pub level: u64,
    /// `c_f(m)` for `0 ≤ m < coeffs.len()`.
    pub coeffs: Vec<Rational>,
    /// Atkin–Lehner eigenvalues at primes dividing the level.
    pub al_signs: BTreeMap<u64, i32>,
}

impl EigenData {
    pub fn from_series(
        weight: i64,
        level: u64,
        f: &QSeries,
        al_signs: BTreeMap<u64, i32>,
    ) -> Result<Self> {
        if f.den() != 1 || f.nmax() < 1 || f.coeff(1) != &Rational::one() {
            return Err(JflError::InvalidInput(
                "eigenform must be integral-exponent with c_f(1) = 1".into(),
            ));
        }
        Ok(Self {
            weight,
            level,
            coeffs: f.coeffs().to_vec(),
            al_signs,
        })
    }

    pub fn coeff(&self, m: u64) -> Result<&Rational> {
        self.coeffs.get(m as usize).ok_or_else(|| {
            JflError::InvalidInput(format!("c_f({m}) beyond the supplied precision"))
        })
    }

    /// Satake parameter for odd `n`: `α_p + α_p⁻¹ = c_f(p) p^{1/2-k}` when
    /// `p ∤ level`, and `α_p = c_f(p) p^{1/2-k}` otherwise.
    pub fn satake_odd(&self, p: u64) -> Result<SatakeParam<HalfPowerNumber>> {
        let k = self.weight / 2;
        let cp = HalfPowerNumber::from_rational(self.coeff(p)?.clone());
        let scaled = cp * HalfPowerNumber::half_pow(p, 1 - 2 * k);
        if !self.level.is_multiple_of(p) {
            return Ok(SatakeParam::Pair {
                trace: scaled,
                c: 1,
            });
        }
        let inv = scaled
            .inv()
            .ok_or_else(|| JflError::InvalidInput(format!("c_f({p}) = 0 at a level prime")))?;
        Ok(SatakeParam::Single {
            alpha: scaled,
            alpha_inv: inv,
        })
    }

    /// Satake parameter for even `n` with the pairing `{α, ξ/α}`:
    /// `α + ξα⁻¹ = ξ c_f(p) p^{(1-k)/2}` for `p ∤ level`; `ξ α = c_f(p)
    /// p^{(1-k)/2}` at `p | d`, `α = c_f(p) p^{(1-k)/2}` at `p | 𝔡_S`.
    pub fn satake_even(
        &self,
        p: u64,
        xi: i32,
        ramified: bool,
    ) -> Result<SatakeParam<HalfPowerNumber>> {
        let cp = HalfPowerNumber::from_rational(self.coeff(p)?.clone());
        let scaled = cp * HalfPowerNumber::half_pow(p, 1 - self.weight);
        let signed = scaled.scale(&int(i64::from(xi)));
        if !self.level.is_multiple_of(p) {
            return Ok(SatakeParam::Pair {
                trace: signed,
                c: xi,
            });
        }
        let alpha = if ramified { scaled } else { signed };
        let inv = alpha
            .inv()
            .ok_or_else(|| JflError::InvalidInput(format!("c_f({p}) = 0 at a level prime")))?;
        Ok(SatakeParam::Single {
            alpha,
            alpha_inv: inv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_factors::{l_plain, l_poly};

    #[test]
    fn recurrence_matches_direct_evaluation() {
        let t = HalfPowerNumber::term(int(3), 5);
        for e in 0..6 {
            let pair = SatakeParam::Pair {
                trace: t.clone(),
                c: 1,
            };
            let via_poly = satake_eval(&l_plain(e), &pair, Clone::clone).unwrap();
            assert_eq!(via_poly, l_by_recurrence(e, &t));
        }
        assert!(l_by_recurrence::<HalfPowerNumber>(-1, &t).is_zero());
        // X = 2 has trace 2 + 1/2 under X ↦ 1/X and 2 - 1/2 under X ↦ -1/X.
        let x = HalfPowerNumber::from_int(2);
        let xi = x.inv().unwrap();
        for (eps, tr) in [
            (1, Rational::new(5.into(), 2.into())),
            (-1, Rational::new(3.into(), 2.into())),
        ] {
            let pair = SatakeParam::Pair {
                trace: HalfPowerNumber::from_rational(tr),
                c: eps,
            };
            for e in 0..5 {
                let p = l_poly(e, eps);
                assert_eq!(
                    satake_eval(&p, &pair, Clone::clone).unwrap(),
                    p.eval(&x, &xi, Clone::clone),
                    "e={e} ε={eps}"
                );
            }
        }
        let lopsided = HPoly::x();
        let pair = SatakeParam::Pair { trace: t, c: 1 };
        assert!(satake_eval(&lopsided, &pair, Clone::clone).is_err());
    }
}
