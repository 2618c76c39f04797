//! Siegel series `b_p(h, s)` of half-integral matrices, computed exactly by
//! two independent routes: direct enumeration of `S_ℓ(Q_p)/S_ℓ(Z_p)` with
//! cyclotomic bucketing, and a reduction to primitive densities over `F_p`.

mod eis;
mod naive;
mod padic;
mod reduction;

use num_traits::{ToPrimitive, Zero};

use crate::arith::{int, psi_bar, LaurentPoly, Rational};
use crate::error::{JflError, Result};
use crate::lattice::{det_big, EvenLattice};
use crate::local_factors::gamma_poly;

pub use eis::siegel_eis_arith;
pub use naive::{siegel_series_naive, NAIVE_BOUND};
pub use padic::{elementary_valuations, nu};
pub use reduction::SiegelOracle;

pub(crate) type QPoly = LaurentPoly<Rational>;

/// A symmetric half-integral matrix `h`, stored as the even integral
/// matrix `2h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfIntegralMatrix {
    two_h: Vec<Vec<i64>>,
}

impl HalfIntegralMatrix {
    /// From `2h`; requires symmetry and even diagonal.
    pub fn from_twice(two_h: Vec<Vec<i64>>) -> Result<Self> {
        let n = two_h.len();
        if n == 0 || two_h.iter().any(|r| r.len() != n) {
            return Err(JflError::InvalidInput(
                "2h must be a nonempty square matrix".into(),
            ));
        }
        for i in 0..n {
            if two_h[i][i] % 2 != 0 {
                return Err(JflError::InvalidInput("2h must have even diagonal".into()));
            }
            for j in 0..i {
                if two_h[i][j] != two_h[j][i] {
                    return Err(JflError::InvalidInput("h must be symmetric".into()));
                }
            }
        }
        Ok(Self { two_h })
    }

    /// `h = S/2`.
    #[must_use]
    pub fn half_of(s: &EvenLattice) -> Self {
        Self {
            two_h: s.gram.clone(),
        }
    }

    #[must_use]
    pub fn size(&self) -> usize {
        self.two_h.len()
    }

    #[must_use]
    pub fn two_h(&self) -> &[Vec<i64>] {
        &self.two_h
    }

    /// `det(2h)`.
    #[must_use]
    pub fn det2h(&self) -> i64 {
        det_big(&self.two_h)
            .to_i64()
            .expect("determinant exceeds i64")
    }

    /// `ξ_p(h) = ψ̄_p((-1)^{ℓ/2} det 2h)` for even `ℓ`.
    #[must_use]
    pub fn xi_p(&self, p: u64) -> i32 {
        let l = self.size();
        let sign = if (l / 2).is_multiple_of(2) { 1 } else { -1 };
        psi_bar(&int(sign * self.det2h()), p)
    }
}

/// `F_p(h; X) = f_p(h; X)/γ_{p,h}(X)`; the remainder must vanish and the
/// constant term must be 1.
pub fn extract_f(h: &HalfIntegralMatrix, p: u64, fp: &QPoly) -> Result<QPoly> {
    let l = h.size();
    let xi = if l.is_multiple_of(2) { h.xi_p(p) } else { 0 };
    let g = gamma_poly(p, l, xi);
    let (q, r) = (fp * &g.den).div_rem(&g.num);
    if !r.is_zero() {
        return Err(JflError::Inconsistent(format!(
            "f_p(h;X) is not divisible by γ_{{p,h}} at p = {p}"
        )));
    }
    if q.coeff(0) != int(1) {
        return Err(JflError::Inconsistent(format!(
            "F_p(h;0) = {} ≠ 1 at p = {p}",
            q.coeff(0)
        )));
    }
    Ok(q)
}
