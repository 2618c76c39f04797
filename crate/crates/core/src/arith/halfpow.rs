//! Exact arithmetic in `Q(√2, √3, √5, ...)`.
//!
//! An element is a finite sum `Σ c_m √m` over squarefree `m >= 1` with
//! rational `c_m`. Products use `√a·√b = g·√(ab/g²)` with `g = gcd(a, b)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{int, pow_rat, rat_string, Rational};
use super::symbols::{factorize, is_squarefree};
use super::{HalfPowAlgebra, Ring};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct HalfPowerNumber {
    terms: BTreeMap<u64, Rational>,
}

impl HalfPowerNumber {
    #[must_use]
    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        Self { terms }
    }

    #[must_use]
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `c·√m` for squarefree `m`.
    #[must_use]
    pub fn term(c: Rational, m: u64) -> Self {
        assert!(is_squarefree(m), "key {m} is not squarefree");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// `√m` for any positive integer `m`.
    #[must_use]
    pub fn sqrt(m: u64) -> Self {
        assert!(m >= 1);
        let mut outside = 1i64;
        let mut inside = 1u64;
        for (p, e) in factorize(m) {
            outside *= (p as i64).pow(e / 2);
            if e % 2 == 1 {
                inside *= p;
            }
        }
        Self::term(int(outside), inside)
    }

    /// `p^(e/2)` for any integer `e`.
    #[must_use]
    pub fn half_pow(p: u64, e: i64) -> Self {
        let base = int(p as i64);
        let whole = pow_rat(&base, e.div_euclid(2));
        if e.rem_euclid(2) == 0 {
            Self::from_rational(whole)
        } else {
            Self::term(whole, p)
        }
    }

    /// `m^(e/2)` for a positive integer `m`.
    #[must_use]
    pub fn half_pow_int(m: u64, e: i64) -> Self {
        factorize(m.max(1))
            .into_iter()
            .fold(Self::one(), |acc, (p, a)| {
                acc * Self::half_pow(p, e * a as i64)
            })
    }

    #[must_use]
    pub fn terms(&self) -> &BTreeMap<u64, Rational> {
        &self.terms
    }

    #[must_use]
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&m| m == 1)
    }

    /// The value as a rational, if every irrational part cancelled.
    #[must_use]
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.terms.get(&1).cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    #[must_use]
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    ///
    /// Eliminates one `√p` at a time: `x = a + b√p` is inverted through
    /// `(a - b√p) / (a² - p b²)`.
    #[must_use]
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        let p = self
            .terms
            .keys()
            .filter(|&&m| m > 1)
            .map(|&m| factorize(m)[0].0)
            .max()
            .expect("irrational element has a prime");
        let conj = self.flip_sign(p);
        let norm = self.clone() * conj.clone();
        debug_assert!(norm.terms.keys().all(|&m| m % p != 0));
        Some(conj * norm.inv()?)
    }

    /// Applies `√p ↦ -√p`.
    #[must_use]
    pub fn flip_sign(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&m, v)| (m, if m % p == 0 { -v.clone() } else { v.clone() }))
                .collect(),
        }
    }

    #[must_use]
    pub fn pow_i(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow_u(e as u64)
        } else {
            self.inv()
                .expect("zero to a negative power")
                .pow_u((-e) as u64)
        }
    }

    fn insert_add(terms: &mut BTreeMap<u64, Rational>, m: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            terms.remove(&m);
        }
    }
}

impl Zero for HalfPowerNumber {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for HalfPowerNumber {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for HalfPowerNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a HalfPowerNumber> for &'a HalfPowerNumber {
    type Output = HalfPowerNumber;
    fn add(self, rhs: &HalfPowerNumber) -> HalfPowerNumber {
        let mut terms = self.terms.clone();
        for (&m, c) in &rhs.terms {
            HalfPowerNumber::insert_add(&mut terms, m, c.clone());
        }
        HalfPowerNumber { terms }
    }
}

impl Sub for HalfPowerNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a HalfPowerNumber> for &'a HalfPowerNumber {
    type Output = HalfPowerNumber;
    fn sub(self, rhs: &HalfPowerNumber) -> HalfPowerNumber {
        let mut terms = self.terms.clone();
        for (&m, c) in &rhs.terms {
            HalfPowerNumber::insert_add(&mut terms, m, -c.clone());
        }
        HalfPowerNumber { terms }
    }
}

impl Neg for HalfPowerNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for HalfPowerNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a HalfPowerNumber> for &'a HalfPowerNumber {
    type Output = HalfPowerNumber;
    fn mul(self, rhs: &HalfPowerNumber) -> HalfPowerNumber {
        let mut terms = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                let g = a.gcd(&b);
                let key = (a / g) * (b / g);
                HalfPowerNumber::insert_add(&mut terms, key, ca * cb * int(g as i64));
            }
        }
        HalfPowerNumber { terms }
    }
}

impl Ring for HalfPowerNumber {
    fn from_rational(r: &Rational) -> Self {
        HalfPowerNumber::from_rational(r.clone())
    }
}

impl HalfPowAlgebra for HalfPowerNumber {
    fn from_half_power(x: &HalfPowerNumber) -> Self {
        x.clone()
    }
}

impl fmt::Display for HalfPowerNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0/1");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&m, c)| {
                if m == 1 {
                    rat_string(c)
                } else {
                    format!("{}*sqrt({m})", rat_string(c))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HalfPowerNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for HalfPowerNumber {
    fn from(r: Rational) -> Self {
        HalfPowerNumber::from_rational(r)
    }
}

impl From<i64> for HalfPowerNumber {
    fn from(n: i64) -> Self {
        HalfPowerNumber::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn sqrt_squares_back() {
        for m in 1..=100u64 {
            if !is_squarefree(m) {
                continue;
            }
            let s = HalfPowerNumber::sqrt(m);
            assert_eq!(&s * &s, HalfPowerNumber::from_int(m as i64));
        }
    }

    #[test]
    fn half_powers_multiply() {
        let a = HalfPowerNumber::half_pow(3, 5);
        let b = HalfPowerNumber::half_pow(3, -3);
        assert_eq!(a * b, HalfPowerNumber::from_int(3));
        assert_eq!(HalfPowerNumber::sqrt(12), HalfPowerNumber::term(int(2), 3));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = HalfPowerNumber::from_rational(rat(1, 2))
            + HalfPowerNumber::sqrt(2)
            + HalfPowerNumber::term(rat(-3, 7), 15);
        let y = x.inv().unwrap();
        assert_eq!(x * y, HalfPowerNumber::one());
    }
}
