use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[must_use]
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[must_use]
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^e` for any integer exponent; panics on `0^(negative)`.
#[must_use]
pub fn pow_rat(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow::pow(base.clone(), e as usize)
    } else {
        assert!(!base.is_zero(), "zero raised to a negative power");
        num_traits::pow::pow(base.recip(), (-e) as usize)
    }
}

/// Serializes as `"num/den"`, including integers (`"5/1"`).
#[must_use]
pub fn rat_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}
