//! Elements of `Q[x]/(m(x))` for a monic irreducible `m`, with an optional
//! involution given by the image of the generator.
//!
//! Elements built without a field (for example through [`Zero::zero`]) are
//! rational constants and combine with elements of any field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{rat_string, Rational};
use super::Ring;

/// Defining data of a number field `Q(θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldDef {
    /// Coefficients of the monic defining polynomial, constant term first.
    pub modulus: Vec<Rational>,
    /// Coordinates of the image of `θ` under the designated involution.
    /// `None` means the involution is the identity.
    pub conj_image: Option<Vec<Rational>>,
}

impl FieldDef {
    #[must_use]
    pub fn new(modulus: Vec<Rational>, conj_image: Option<Vec<Rational>>) -> Arc<Self> {
        assert!(
            modulus.len() >= 2,
            "defining polynomial must have degree >= 1"
        );
        assert!(
            modulus.last().unwrap().is_one(),
            "defining polynomial must be monic"
        );
        Arc::new(Self {
            modulus,
            conj_image,
        })
    }

    /// `Q(√c)` with the involution `√c ↦ -√c`.
    #[must_use]
    pub fn quadratic(c: Rational) -> Arc<Self> {
        Self::new(
            vec![-c, Rational::zero(), Rational::one()],
            Some(vec![Rational::zero(), -Rational::one()]),
        )
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

#[derive(Clone)]
pub struct NumberFieldElem {
    field: Option<Arc<FieldDef>>,
    coords: Vec<Rational>,
}

impl NumberFieldElem {
    #[must_use]
    pub fn new(field: &Arc<FieldDef>, coords: Vec<Rational>) -> Self {
        let mut e = Self {
            field: Some(field.clone()),
            coords,
        };
        e.reduce();
        e
    }

    #[must_use]
    pub fn generator(field: &Arc<FieldDef>) -> Self {
        Self::new(field, vec![Rational::zero(), Rational::one()])
    }

    #[must_use]
    pub fn constant(c: Rational) -> Self {
        let mut e = Self {
            field: None,
            coords: vec![c],
        };
        e.trim();
        e
    }

    #[must_use]
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    #[must_use]
    pub fn field(&self) -> Option<&Arc<FieldDef>> {
        self.field.as_ref()
    }

    #[must_use]
    pub fn to_rational(&self) -> Option<Rational> {
        match self.coords.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.coords.last().is_some_and(Zero::is_zero) {
            self.coords.pop();
        }
    }

    fn reduce(&mut self) {
        self.trim();
        let Some(field) = self.field.clone() else {
            assert!(
                self.coords.len() <= 1,
                "non-constant element without a field"
            );
            return;
        };
        let d = field.degree();
        while self.coords.len() > d {
            let top = self.coords.pop().unwrap();
            let shift = self.coords.len() - d;
            for (i, m) in field.modulus[..d].iter().enumerate() {
                self.coords[shift + i] -= &top * m;
            }
            self.trim();
        }
    }

    fn join_field(a: &Self, b: &Self) -> Option<Arc<FieldDef>> {
        match (&a.field, &b.field) {
            (Some(f), Some(g)) => {
                assert!(
                    Arc::ptr_eq(f, g) || f == g,
                    "mixing elements of different fields"
                );
                Some(f.clone())
            }
            (Some(f), None) | (None, Some(f)) => Some(f.clone()),
            (None, None) => None,
        }
    }

    /// Image under the field's involution.
    #[must_use]
    pub fn conj(&self) -> Self {
        let Some(field) = &self.field else {
            return self.clone();
        };
        let Some(img) = &field.conj_image else {
            return self.clone();
        };
        let theta = Self::new(field, img.clone());
        let mut acc = Self::zero();
        let mut power = Self::one();
        for c in &self.coords {
            acc = acc + power.scale(c);
            power = power * theta.clone();
        }
        acc
    }

    #[must_use]
    pub fn scale(&self, c: &Rational) -> Self {
        let mut e = Self {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        };
        e.trim();
        e
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    #[must_use]
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self {
                field: self.field.clone(),
                coords: vec![r.recip()],
            });
        }
        let field = self
            .field
            .clone()
            .expect("non-constant element has a field");
        let (g, s) = ext_gcd(&self.coords, &field.modulus);
        assert!(
            g.len() == 1,
            "element is a zero divisor: modulus not irreducible"
        );
        let inv_g = g[0].recip();
        Some(Self::new(&field, s.iter().map(|c| c * &inv_g).collect()))
    }
}

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    let n = q.len() + b.len();
    if out.len() < n {
        out.resize(n, Rational::zero());
    }
    for (i, qi) in q.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let lead = b.last().expect("division by zero polynomial").recip();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)`.
fn ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for NumberFieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Zero for NumberFieldElem {
    fn zero() -> Self {
        Self {
            field: None,
            coords: vec![],
        }
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

impl One for NumberFieldElem {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for NumberFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let field = Self::join_field(&self, &rhs);
        let n = self.coords.len().max(rhs.coords.len());
        let mut coords = vec![Rational::zero(); n];
        for (i, c) in self.coords.into_iter().enumerate() {
            coords[i] += c;
        }
        for (i, c) in rhs.coords.into_iter().enumerate() {
            coords[i] += c;
        }
        let mut e = Self { field, coords };
        e.trim();
        e
    }
}

impl Neg for NumberFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            field: self.field,
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for NumberFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for NumberFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let field = Self::join_field(&self, &rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self {
                field,
                coords: vec![],
            };
        }
        let mut coords = vec![Rational::zero(); self.coords.len() + rhs.coords.len() - 1];
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in rhs.coords.iter().enumerate() {
                coords[i + j] += a * b;
            }
        }
        let mut e = Self { field, coords };
        e.reduce();
        e
    }
}

impl Ring for NumberFieldElem {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

impl fmt::Debug for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*t^{i}", rat_string(c)))
            .collect();
        if parts.is_empty() {
            write!(f, "0/1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn gaussian_integers() {
        let f = FieldDef::quadratic(int(-1));
        let i = NumberFieldElem::generator(&f);
        assert_eq!(i.clone() * i.clone(), NumberFieldElem::constant(int(-1)));
        let z = NumberFieldElem::new(&f, vec![int(3), int(4)]);
        assert_eq!(z.clone() * z.conj(), NumberFieldElem::constant(int(25)));
        assert_eq!(z.conj().conj(), z);
        let w = z.inv().unwrap();
        assert_eq!(w * z, NumberFieldElem::one());
    }

    #[test]
    fn cubic_inverse() {
        let f = FieldDef::new(vec![int(-2), int(0), int(0), int(1)], None);
        let t = NumberFieldElem::generator(&f);
        let x = t.clone() * t.clone() + t.scale(&rat(1, 3)) + NumberFieldElem::constant(int(5));
        assert_eq!(x.clone() * x.inv().unwrap(), NumberFieldElem::one());
    }
}
