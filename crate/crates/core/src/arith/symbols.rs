//! Elementary number theory on machine integers: factorization, residue
//! symbols, Hilbert symbols and the local square-class character `ψ̄_p`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(u64),
    Infinity,
}

#[must_use]
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[must_use]
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&m| is_prime(m)).collect()
}

/// Prime factorization of `n >= 1`, primes increasing.
#[must_use]
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n >= 1` in increasing order.
#[must_use]
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let cur = ds.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

#[must_use]
pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `σ_k(n) = Σ_{d|n} d^k`.
#[must_use]
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

#[must_use]
pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Signed squarefree kernel: `n = squarefree_part(n) * m²`.
#[must_use]
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0, "squarefree_part(0)");
    let s: i64 = factorize(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i64)
        .product();
    if n < 0 {
        -s
    } else {
        s
    }
}

/// Discriminant of `Q(√n)`; `1` when `n` is a square.
#[must_use]
pub fn fundamental_discriminant(n: i64) -> i64 {
    let s = squarefree_part(n);
    if s == 1 {
        1
    } else if s.rem_euclid(4) == 1 {
        s
    } else {
        4 * s
    }
}

/// `p`-adic valuation of a nonzero integer.
#[must_use]
pub fn ord_p(n: i64, p: u64) -> u32 {
    assert!(n != 0, "ord_p(0)");
    let mut m = n.unsigned_abs();
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    e
}

fn ord_big(n: &BigInt, p: u64) -> i64 {
    let mut m = n.abs();
    let pb = BigInt::from(p);
    let mut e = 0;
    while (&m % &pb).is_zero() {
        m /= &pb;
        e += 1;
    }
    e
}

/// `p`-adic valuation of a nonzero rational.
#[must_use]
pub fn ord_p_rat(r: &Rational, p: u64) -> i64 {
    assert!(!r.is_zero(), "ord_p of zero");
    ord_big(r.numer(), p) - ord_big(r.denom(), p)
}

/// Strips all factors of `p`, returning `(ord, unit part)` for `num·den` of a
/// rational; `num·den` lies in the same square class as `num/den`.
fn split_square_class(r: &Rational, p: u64) -> (i64, i128) {
    let v = ord_p_rat(r, p);
    let pb = BigInt::from(p);
    let mut n = r.numer().clone();
    while (&n % &pb).is_zero() {
        n /= &pb;
    }
    let mut d = r.denom().clone();
    while (&d % &pb).is_zero() {
        d /= &pb;
    }
    let u = (n * d)
        .to_i128()
        .expect("square class representative too large");
    (v, u)
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
#[must_use]
pub fn legendre(a: i64, p: u64) -> i32 {
    legendre_i128(a as i128, p)
}

fn legendre_i128(a: i128, p: u64) -> i32 {
    let p128 = p as i128;
    let a = a.rem_euclid(p128);
    if a == 0 {
        return 0;
    }
    let mut result: i128 = 1;
    let mut base = a;
    let mut e = (p128 - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p128;
        }
        base = base * base % p128;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Residue symbol with the ramification-aware convention at 2:
/// `(a/2) = 1, -1, 0` according as `a ≡ 1 (8)`, `a ≡ 5 (8)`, otherwise.
/// Completely multiplicative in `n`; `(a/-1) = sign(a)`.
#[must_use]
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    symbol_generic(a, n, |a, p| {
        if p == 2 {
            match a.rem_euclid(8) {
                1 => 1,
                5 => -1,
                _ => 0,
            }
        } else {
            legendre(a, p)
        }
    })
}

/// Standard Kronecker symbol, `(a/2) = 1` for `a ≡ ±1 (8)` and `-1` for
/// `a ≡ ±3 (8)`; this is the quadratic character `ψ_D(n) = (D/n)` for a
/// fundamental discriminant `D`.
#[must_use]
pub fn kronecker_std(a: i64, n: i64) -> i32 {
    symbol_generic(a, n, |a, p| {
        if p == 2 {
            match a.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            legendre(a, p)
        }
    })
}

fn symbol_generic(a: i64, n: i64, at_prime: impl Fn(i64, u64) -> i32) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut result = if n < 0 && a < 0 { -1 } else { 1 };
    for (p, e) in factorize(n.unsigned_abs()) {
        let s = at_prime(a, p);
        if e % 2 == 1 {
            result *= s;
        } else if s == 0 {
            result = 0;
        }
    }
    result
}

/// `(a/p)` for a rational `a`, zero when `a` is not a `p`-adic integer or is
/// divisible by `p`.
#[must_use]
pub fn residue_symbol_rat(a: &Rational, p: u64) -> i32 {
    if a.is_zero() || ord_p_rat(a, p) != 0 {
        return 0;
    }
    let (_, u) = split_square_class(a, p);
    if p == 2 {
        match u.rem_euclid(8) {
            1 => 1,
            5 => -1,
            _ => 0,
        }
    } else {
        legendre_i128(u, p)
    }
}

/// Hilbert symbol `(a, b)_v`.
#[must_use]
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split_square_class(a, p);
            let (beta, v) = split_square_class(b, p);
            if p == 2 {
                let eps = |x: i128| ((x - 1) / 2).rem_euclid(2);
                let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2);
                let e = eps(u) * eps(v) + (alpha as i128) * omega(v) + (beta as i128) * omega(u);
                if e.rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let mut s = 1;
                if (alpha * beta).rem_euclid(2) == 1 && p % 4 == 3 {
                    s = -s;
                }
                if beta.rem_euclid(2) == 1 {
                    s *= legendre_i128(u, p);
                }
                if alpha.rem_euclid(2) == 1 {
                    s *= legendre_i128(v, p);
                }
                s
            }
        }
    }
}

/// `ψ̄_p(a)`: 1 if `Q_p(√a) = Q_p`, -1 if unramified quadratic, 0 if ramified.
#[must_use]
pub fn psi_bar(a: &Rational, p: u64) -> i32 {
    assert!(!a.is_zero(), "psi_bar of zero");
    let (v, u) = split_square_class(a, p);
    if v.rem_euclid(2) == 1 {
        return 0;
    }
    if p == 2 {
        match u.rem_euclid(8) {
            1 => 1,
            5 => -1,
            _ => 0,
        }
    } else {
        legendre_i128(u, p)
    }
}

/// `ψ̄_p((-1)^k a)`.
#[must_use]
pub fn psi_bar_k(a: &Rational, p: u64, k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        psi_bar(a, p)
    } else {
        psi_bar(&-a.clone(), p)
    }
}

/// `(-1)^k`.
#[must_use]
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
