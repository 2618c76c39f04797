//! Arithmetic part of the Fourier coefficients of the Siegel Eisenstein
//! series of weight `κ` and degree `ℓ ≤ 3`.

use super::{HalfIntegralMatrix, SiegelOracle};
use crate::arith::{
    dirichlet_l_minus, factorize, fundamental_discriminant, int, pow_rat, Rational,
};
use crate::error::{JflError, Result};

/// The `h`-dependent part of the `h`-th Fourier coefficient of the Siegel
/// Eisenstein series of weight `κ`, with all factors depending only on
/// `(ℓ, κ)` removed:
/// `det(2h)^{κ-1} Π_p F_p(h; p^{-κ})` for `ℓ = 1`,
/// `𝔣^{2κ-3} L(2-κ, χ_D) Π_p F_p(h; p^{-κ})` for `ℓ = 2` with
/// `-det(2h) = D𝔣²` and `D` fundamental, and
/// `det(2h)^{κ-2} Π_p F_p(h; p^{-κ})` for `ℓ = 3`.
pub fn siegel_eis_arith(
    h: &HalfIntegralMatrix,
    kappa: i64,
    oracle: &mut SiegelOracle,
) -> Result<Rational> {
    let l = h.size();
    if !(1..=3).contains(&l) {
        return Err(JflError::Unsupported(format!(
            "Eisenstein coefficients of degree {l}"
        )));
    }
    if kappa <= l as i64 + 1 || kappa % 2 != 0 {
        return Err(JflError::InvalidInput(format!(
            "weight κ = {kappa} must be even and exceed ℓ + 1"
        )));
    }
    let det = h.det2h();
    if det <= 0 {
        return Err(JflError::InvalidInput("h must be positive definite".into()));
    }
    let mut primes: Vec<u64> = factorize(det as u64).into_iter().map(|(p, _)| p).collect();
    if !primes.contains(&2) {
        primes.insert(0, 2);
    }
    let mut prod = int(1);
    for p in primes {
        let fp = oracle.f_p(h, p)?;
        let big_f = super::extract_f(h, p, &fp)?;
        let x = pow_rat(&int(p as i64), -kappa);
        let xi = pow_rat(&int(p as i64), kappa);
        prod *= big_f.eval(&x, &xi, Clone::clone);
    }
    let d = int(det);
    Ok(match l {
        1 => pow_rat(&d, kappa - 1) * prod,
        2 => {
            let disc = fundamental_discriminant(-det);
            let f2 = -det / disc;
            let f = (f2 as f64).sqrt().round() as i64;
            debug_assert_eq!(f * f, f2);
            pow_rat(&int(f), 2 * kappa - 3) * dirichlet_l_minus((kappa - 1) as usize, disc)? * prod
        }
        _ => pow_rat(&d, kappa - 2) * prod,
    })
}
