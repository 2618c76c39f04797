//! Laurent polynomials in one variable `X` over an exact ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::{HalfPowAlgebra, Ring};

/// `Σ c_e X^e` with finitely many nonzero `c_e`; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C: Ring> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Ring> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<C: Ring> LaurentPoly<C> {
    #[must_use]
    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    #[must_use]
    pub fn monomial(c: C, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// The variable `X`.
    #[must_use]
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `X^e`.
    #[must_use]
    pub fn x_pow(e: i64) -> Self {
        Self::monomial(C::one(), e)
    }

    #[must_use]
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert(e, s);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    #[must_use]
    pub fn coeff(&self, e: i64) -> C {
        self.coeffs.get(&e).cloned().unwrap_or_else(C::zero)
    }

    #[must_use]
    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.coeffs
    }

    #[must_use]
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    #[must_use]
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True when every exponent is nonnegative.
    #[must_use]
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    #[must_use]
    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, v)| (e, v.clone() * c.clone())))
    }

    /// Multiplies by `X^k`.
    #[must_use]
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, v)| (e + k, v.clone()))
                .collect(),
        }
    }

    /// `P(X^{-1})`.
    #[must_use]
    pub fn reciprocal(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, v)| (-e, v.clone())).collect(),
        }
    }

    /// Evaluates at `x`, using `x_inv` for negative exponents.
    pub fn eval<R>(&self, x: &R, x_inv: &R, embed: impl Fn(&C) -> R) -> R
    where
        R: Ring,
    {
        let mut acc = R::zero();
        for (&e, c) in &self.coeffs {
            let pw = if e >= 0 {
                x.pow_u(e as u64)
            } else {
                x_inv.pow_u((-e) as u64)
            };
            acc = acc + embed(c) * pw;
        }
        acc
    }

    /// `P(c·X^m)`, where `c_inv` is the inverse of `c`.
    #[must_use]
    pub fn substitute(&self, c: &C, c_inv: &C, m: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, v)| {
            let factor = if e >= 0 {
                c.pow_u(e as u64)
            } else {
                c_inv.pow_u((-e) as u64)
            };
            (e * m, v.clone() * factor)
        }))
    }

    #[must_use]
    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, v)| (e, f(v))))
    }

    #[must_use]
    pub fn pow(&self, e: u64) -> Self {
        self.pow_u(e)
    }
}

impl LaurentPoly<Rational> {
    /// Division with remainder by a polynomial with invertible leading
    /// coefficient; both operands must be genuine polynomials.
    #[must_use]
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(self.is_polynomial() && divisor.is_polynomial());
        let dmax = divisor.max_exp().expect("division by zero polynomial");
        let lead_inv = divisor.coeff(dmax).recip();
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(rmax) = r.max_exp() {
            if rmax < dmax {
                break;
            }
            let c = r.coeff(rmax) * &lead_inv;
            let t = Self::monomial(c, rmax - dmax);
            r = r - &t * divisor;
            q = q + t;
        }
        (q, r)
    }
}

impl<C: Ring> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Add for LaurentPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a, C: Ring> Add<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<C: Ring> Sub for LaurentPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a, C: Ring> Sub<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<C: Ring> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Ring> Mul for LaurentPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, C: Ring> Mul<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Ring> Ring for LaurentPoly<C> {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }
}

impl<C: HalfPowAlgebra> HalfPowAlgebra for LaurentPoly<C> {
    fn from_half_power(x: &super::HalfPowerNumber) -> Self {
        Self::constant(C::from_half_power(x))
    }
}

impl<C: Ring> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| format!("({c:?})*X^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, HalfPowerNumber};

    type P = LaurentPoly<Rational>;

    #[test]
    fn division_recovers_factor() {
        let a = P::from_terms([(0, int(1)), (1, int(-3)), (2, int(2))]);
        let b = P::from_terms([(0, int(1)), (1, int(-1))]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, P::from_terms([(0, int(1)), (1, int(-2))]));
    }

    #[test]
    fn substitution_with_half_powers() {
        let p = LaurentPoly::<HalfPowerNumber>::from_terms([
            (1, HalfPowerNumber::one()),
            (-1, HalfPowerNumber::one()),
        ]);
        let c = HalfPowerNumber::half_pow(2, 1);
        let ci = HalfPowerNumber::half_pow(2, -1);
        let q = p.substitute(&c, &ci, 2);
        assert_eq!(q.coeff(2), c);
        assert_eq!(q.coeff(-2), ci);
    }
}
