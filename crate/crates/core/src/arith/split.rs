//! The splitting `N = 𝔡_N·𝔣_N²` through the quadratic field
//! `Q(((-1)^k N)^{1/2})`.

use num_traits::One;

use super::rational::{int, pow_rat, Rational};
use super::symbols::{factorize, ord_p_rat, psi_bar_k};

/// Local conductor exponent
/// `𝔣_p(a) = [(ord_p a + 1 - δ(p=2))/2] - 1 + ψ̄_p((-1)^k a)²`.
#[must_use]
pub fn frak_f_p(a: &Rational, p: u64, k: i64) -> i64 {
    let ord = ord_p_rat(a, p);
    let delta = i64::from(p == 2);
    let psi = psi_bar_k(a, p, k) as i64;
    (ord + 1 - delta).div_euclid(2) - 1 + psi * psi
}

/// Returns `(𝔡_N, 𝔣_N)` with `𝔣_N = Π_p p^{𝔣_p(N)}` and `𝔡_N = N 𝔣_N^{-2}`;
/// `𝔡_N` is the absolute discriminant of `Q(((-1)^k N)^{1/2})`.
#[must_use]
pub fn fundamental_split(n: u64, k: i64) -> (Rational, Rational) {
    assert!(n >= 1);
    let nr = int(n as i64);
    let mut primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    if !primes.contains(&2) {
        primes.push(2);
    }
    let mut f = Rational::one();
    for p in primes {
        let e = frak_f_p(&nr, p, k);
        f *= pow_rat(&int(p as i64), e);
    }
    let d = &nr / (&f * &f);
    (d, f)
}
