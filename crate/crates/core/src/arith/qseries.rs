//! Truncated power series in `q^{1/den}` with exact rational coefficients.
//!
//! A series stores the coefficients of `q^{j/den}` for `0 <= j <= nmax`.
//! Binary operations require equal `den` and truncate to the smaller order;
//! nothing ever extends precision.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

/// Default truncation order for `q`-expansions.
pub const DEFAULT_PREC: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    den: u32,
    coeffs: Vec<Rational>,
}

impl QSeries {
    #[must_use]
    pub fn zero(den: u32, nmax: usize) -> Self {
        assert!(den >= 1);
        Self {
            den,
            coeffs: vec![Rational::zero(); nmax + 1],
        }
    }

    #[must_use]
    pub fn one(den: u32, nmax: usize) -> Self {
        let mut s = Self::zero(den, nmax);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from coefficients `c_0, ..., c_nmax`.
    #[must_use]
    pub fn from_coeffs(den: u32, coeffs: Vec<Rational>) -> Self {
        assert!(den >= 1 && !coeffs.is_empty());
        Self { den, coeffs }
    }

    #[must_use]
    pub fn den(&self) -> u32 {
        self.den
    }

    #[must_use]
    pub fn nmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^{j/den}`; panics beyond the truncation order.
    #[must_use]
    pub fn coeff(&self, j: usize) -> &Rational {
        assert!(
            j <= self.nmax(),
            "coefficient {j} beyond truncation order {}",
            self.nmax()
        );
        &self.coeffs[j]
    }

    pub fn set_coeff(&mut self, j: usize, c: Rational) {
        self.coeffs[j] = c;
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    #[must_use]
    pub fn truncate(&self, nmax: usize) -> Self {
        assert!(nmax <= self.nmax());
        Self {
            den: self.den,
            coeffs: self.coeffs[..=nmax].to_vec(),
        }
    }

    #[must_use]
    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            den: self.den,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    #[must_use]
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.den, self.nmax());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_den(&self, other: &Self) {
        assert_eq!(self.den, other.den, "q-series with different denominators");
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.check_den(rhs);
        let n = self.nmax().min(rhs.nmax());
        QSeries {
            den: self.den,
            coeffs: (0..=n).map(|j| &self.coeffs[j] + &rhs.coeffs[j]).collect(),
        }
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.check_den(rhs);
        let n = self.nmax().min(rhs.nmax());
        QSeries {
            den: self.den,
            coeffs: (0..=n).map(|j| &self.coeffs[j] - &rhs.coeffs[j]).collect(),
        }
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.check_den(rhs);
        let n = self.nmax().min(rhs.nmax());
        let mut out = vec![Rational::zero(); n + 1];
        let rhs_nz: Vec<(usize, &Rational)> = rhs.coeffs[..=n]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs_nz {
                if i + j > n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        QSeries {
            den: self.den,
            coeffs: out,
        }
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: Self) -> QSeries {
        &self + &rhs
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: Self) -> QSeries {
        &self - &rhs
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: Self) -> QSeries {
        &self * &rhs
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            den: self.den,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}
