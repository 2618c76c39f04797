//! The representation counts `a_S(ℓ) = #{μ ∈ Ξ : ℓ ≡ -D_S·S[μ]/2 mod D_S}`
//! and their local factorization.

use num_traits::ToPrimitive;

use super::{DiscGroup, GlobalData, PrimeClass};
use crate::arith::{factorize, int, kronecker_symbol, legendre, sign_pow};

/// `k mod 2` forced by `κ = k + [(n+1)/2]` being even.
#[must_use]
pub fn forced_k_parity(n: usize) -> i64 {
    (n.div_ceil(2) % 2) as i64
}

/// `m ∈ 𝔇_k`, i.e. `(-1)^k m ≡ 0, 1 mod 4`.
fn in_frak_d(m: i64, k: i64) -> bool {
    matches!((sign_pow(k) * m).rem_euclid(4), 0 | 1)
}

/// Direct count over the coset representatives.
#[must_use]
pub fn a_s_count_direct(g: &GlobalData, dg: &DiscGroup, ell: i64) -> u64 {
    let d = g.big_d_s;
    dg.norms
        .iter()
        .filter(|q| {
            let v = (int(d) * *q)
                .to_integer()
                .to_i64()
                .expect("D_S·S[μ]/2 is integral");
            (ell + v).rem_euclid(d) == 0
        })
        .count() as u64
}

/// The local factor `a_{S,p}(ℓ)`.
#[must_use]
pub fn a_s_local_factor(g: &GlobalData, p: u64, ell: i64, k: i64) -> i64 {
    let class = g.class(p);
    let pi = p as i64;
    let not_div = i64::from(ell.rem_euclid(pi) != 0);
    if g.is_odd() {
        let lam = g.lambda_s.expect("odd rank");
        let x = lam * ell;
        let eta = i64::from(g.local(p).eta_p);
        if p == 2 {
            let in_d = in_frak_d(x, k);
            match class {
                PrimeClass::S0 => i64::from(in_d),
                PrimeClass::S1 => {
                    i64::from(in_d) * (1 + eta * i64::from(kronecker_symbol(sign_pow(k) * x, 2)))
                }
                PrimeClass::S2 => {
                    if in_d {
                        1
                    } else {
                        3
                    }
                }
            }
        } else {
            match class {
                PrimeClass::S0 => 1,
                PrimeClass::S1 => 1 + eta * i64::from(legendre(sign_pow(k) * x, p)),
                PrimeClass::S2 => pi * not_div + 1,
            }
        }
    } else {
        match class {
            PrimeClass::S0 => 1,
            PrimeClass::S1 => {
                let eta = i64::from(g.local(p).eta_p_half);
                let chi = g.chi_s_p(p, sign_pow(k) * g.d_s * ell).expect("even rank");
                1 + eta * i64::from(chi)
            }
            PrimeClass::S2 => pi * not_div + 1,
        }
    }
}

/// `Π_{p | D_S} a_{S,p}(ℓ)`.
#[must_use]
pub fn a_s_count_local(g: &GlobalData, ell: i64, k: i64) -> i64 {
    factorize(g.big_d_s as u64)
        .into_iter()
        .map(|(p, _)| a_s_local_factor(g, p, ell, k))
        .product()
}
