//! Bernoulli numbers and special values `L(1-k, ψ_D)` of quadratic
//! Dirichlet L-functions.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::rational::{int, pow_rat, Rational};
use super::symbols::{fundamental_discriminant, kronecker_std};
use crate::error::JflError;

fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(j))) * bj;
        }
        b.push(-s / int(m as i64 + 1));
    }
    b
}

/// `B_n` with the convention `B_1 = -1/2`.
#[must_use]
pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_table(n).pop().unwrap()
}

/// Bernoulli polynomial `B_k(x)`.
#[must_use]
pub fn bernoulli_poly(k: usize, x: &Rational) -> Rational {
    let b = bernoulli_table(k);
    eval_bernoulli_poly(&b, k, x)
}

fn eval_bernoulli_poly(b: &[Rational], k: usize, x: &Rational) -> Rational {
    let mut s = Rational::zero();
    for (j, bj) in b.iter().enumerate().take(k + 1) {
        let c = Rational::from_integer(binomial(BigInt::from(k), BigInt::from(j)));
        s += c * bj * pow_rat(x, (k - j) as i64);
    }
    s
}

/// `B_{k,ψ} = f^{k-1} Σ_{a=1}^{f} ψ(a) B_k(a/f)` for the character `ψ` of
/// `Q(√D)`, `f` its conductor. `D` need not be fundamental; a square `D`
/// gives the trivial character.
#[must_use]
pub fn generalized_bernoulli(k: usize, d: i64) -> Rational {
    let disc = fundamental_discriminant(d);
    let f = disc.unsigned_abs() as i64;
    let b = bernoulli_table(k);
    let mut s = Rational::zero();
    for a in 1..=f {
        let chi = if disc == 1 { 1 } else { kronecker_std(disc, a) };
        if chi != 0 {
            let term = eval_bernoulli_poly(&b, k, &Rational::new(BigInt::from(a), BigInt::from(f)));
            if chi > 0 {
                s += term;
            } else {
                s -= term;
            }
        }
    }
    s * pow_rat(&int(f), k as i64 - 1)
}

/// `L(1-k, ψ_D) = -B_{k,ψ}/k`; `D = 1` (or any square) gives `ζ(1-k)`.
pub fn dirichlet_l_minus(k: usize, d: i64) -> Result<Rational, JflError> {
    if k == 0 {
        return Err(JflError::InvalidInput("L(1-k) requires k >= 1".into()));
    }
    if d == 0 {
        return Err(JflError::InvalidInput(
            "character of Q(√0) is undefined".into(),
        ));
    }
    Ok(-generalized_bernoulli(k, d) / int(k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert_eq!(bernoulli_number(7), Rational::zero());
    }

    #[test]
    fn l_values() {
        assert_eq!(dirichlet_l_minus(2, 1).unwrap(), rat(-1, 12));
        assert_eq!(dirichlet_l_minus(4, 1).unwrap(), rat(1, 120));
        assert_eq!(dirichlet_l_minus(1, -4).unwrap(), rat(1, 2));
        // L(0, ψ_{-3}) = h/w·2 = 1/3
        assert_eq!(dirichlet_l_minus(1, -3).unwrap(), rat(1, 3));
        assert!(dirichlet_l_minus(0, 1).is_err());
    }
}
