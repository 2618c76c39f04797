//! Exact number and polynomial arithmetic.
//!
//! Everything downstream works over exact rings: big rationals, the ring
//! `Q[√p : p prime]` of [`HalfPowerNumber`]s, small number fields, Laurent
//! polynomials over any of these, and truncated `q`-series.

mod bernoulli;
mod halfpow;
mod laurent;
mod linalg;
mod numfield;
mod qseries;
mod rational;
mod split;
mod symbols;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use bernoulli::{bernoulli_number, bernoulli_poly, dirichlet_l_minus, generalized_bernoulli};
pub use halfpow::HalfPowerNumber;
pub use laurent::LaurentPoly;
pub use linalg::{nullspace, rank, rref};
pub use numfield::{FieldDef, NumberFieldElem};
pub use qseries::{QSeries, DEFAULT_PREC};
pub use rational::{int, parse_rational, pow_rat, rat, rat_string, Rational};
pub use split::{frak_f_p, fundamental_split};
pub use symbols::{
    divisors, factorize, fundamental_discriminant, hilbert_symbol, is_prime, is_squarefree,
    kronecker_std, kronecker_symbol, legendre, mobius, ord_p, ord_p_rat, primes_up_to, psi_bar,
    psi_bar_k, residue_symbol_rat, sigma, sign_pow, squarefree_part, Place,
};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Image of a rational number under the structure map `Q -> R`.
    fn from_rational(r: &Rational) -> Self;

    /// `self^e` for `e >= 0`.
    fn pow_u(&self, e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Rings that contain the square roots of all primes used by the caller.
pub trait HalfPowAlgebra: Ring {
    fn from_half_power(x: &HalfPowerNumber) -> Self;
}

impl Ring for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}
