//! Global invariants `b_S, d_S, Λ_S, δ_S, 𝔡_S, D_S` and the characters
//! `χ_S`, `χ_{S,p}` attached to an even-rank lattice.

use num_traits::Zero;
use serde::Serialize;

use super::local::{disc_k, local_data_unchecked};
use super::{is_maximal, EvenLattice, LocalData, PrimeClass};
use crate::arith::{factorize, hilbert_symbol, int, kronecker_std, Place, Rational};
use crate::error::{JflError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalData {
    #[serde(skip)]
    pub lattice: EvenLattice,
    pub n: usize,
    pub det: i64,
    /// Primes in `𝔖_1` and `𝔖_2`, increasing.
    pub s1: Vec<u64>,
    pub s2: Vec<u64>,
    pub d_s: i64,
    pub b_s: Option<i64>,
    pub lambda_s: Option<i64>,
    pub delta_s: Option<i64>,
    /// `𝔡_S = |disc K|` and the signed discriminant of `K` (even `n`).
    pub frak_d_s: Option<i64>,
    pub disc_k: Option<i64>,
    pub big_d_s: i64,
    /// Local data at every prime dividing `2 det S`.
    pub locals: Vec<LocalData>,
}

/// All global invariants; asserts `D_S = 2δ_S⁻¹ det S` (odd `n`) or
/// `D_S = d_S⁻¹ det S` (even `n`).
pub fn global_data(s: &EvenLattice) -> Result<GlobalData> {
    if !is_maximal(s) {
        return Err(JflError::NotMaximal(
            "lattice admits an even overlattice".into(),
        ));
    }
    let n = s.rank();
    let det = s.det();
    let dk = disc_k(s);
    let mut primes: Vec<u64> = factorize(det as u64).into_iter().map(|(p, _)| p).collect();
    if !primes.contains(&2) {
        primes.insert(0, 2);
    }
    let mut locals = Vec::new();
    for p in primes {
        locals.push(local_data_unchecked(s, p, dk)?);
    }
    let in_class = |c: PrimeClass| -> Vec<u64> {
        locals
            .iter()
            .filter(|l| l.class == c)
            .map(|l| l.p)
            .collect()
    };
    let s1 = in_class(PrimeClass::S1);
    let s2 = in_class(PrimeClass::S2);
    let d_s: i64 = s2.iter().map(|&p| p as i64).product();
    let mut g = GlobalData {
        lattice: s.clone(),
        n,
        det,
        s1: s1.clone(),
        s2: s2.clone(),
        d_s,
        b_s: None,
        lambda_s: None,
        delta_s: None,
        frak_d_s: None,
        disc_k: dk,
        big_d_s: 0,
        locals,
    };
    if n % 2 == 1 {
        let b_s: i64 = s1.iter().map(|&p| p as i64).product();
        let lambda_s: i64 = s2.iter().filter(|&&p| p != 2).map(|&p| p as i64).product();
        let delta_s = if s2.contains(&2) { 2 * d_s } else { d_s };
        g.b_s = Some(b_s);
        g.lambda_s = Some(lambda_s);
        g.delta_s = Some(delta_s);
        g.big_d_s = 4 * b_s * lambda_s;
        if g.big_d_s * delta_s != 2 * det {
            return Err(JflError::Inconsistent(format!(
                "D_S = {} but 2 det S / δ_S = {}/{}",
                g.big_d_s,
                2 * det,
                delta_s
            )));
        }
    } else {
        let fd = dk.expect("even rank").abs();
        g.frak_d_s = Some(fd);
        g.big_d_s = fd * d_s;
        if g.big_d_s * d_s != det {
            return Err(JflError::Inconsistent(format!(
                "D_S = {} but det S / d_S = {det}/{d_s}",
                g.big_d_s
            )));
        }
        let ramified: Vec<u64> = factorize(fd as u64).into_iter().map(|(p, _)| p).collect();
        if ramified != g.s1 {
            return Err(JflError::Inconsistent(format!(
                "𝔖_1 = {:?} differs from the primes {ramified:?} dividing 𝔡_S",
                g.s1
            )));
        }
    }
    Ok(g)
}

impl GlobalData {
    #[must_use]
    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// Local data at any prime.
    #[must_use]
    pub fn local(&self, p: u64) -> LocalData {
        if let Some(l) = self.locals.iter().find(|l| l.p == p) {
            return l.clone();
        }
        local_data_unchecked(&self.lattice, p, self.disc_k)
            .expect("lattice validated at construction")
    }

    #[must_use]
    pub fn class(&self, p: u64) -> PrimeClass {
        if self.s1.contains(&p) {
            PrimeClass::S1
        } else if self.s2.contains(&p) {
            PrimeClass::S2
        } else {
            PrimeClass::S0
        }
    }

    /// `k mod 2` forced by `κ = k + [(n+1)/2]` being even.
    #[must_use]
    pub fn k_parity(&self) -> i64 {
        (self.n.div_ceil(2) % 2) as i64
    }

    fn require_even(&self) -> Result<i64> {
        self.disc_k
            .ok_or_else(|| JflError::Unsupported("χ_S is defined only for even rank".into()))
    }

    /// `χ_S(m)`, the Kronecker symbol of the signed discriminant of `K`.
    pub fn chi_s(&self, m: i64) -> Result<i32> {
        let d = self.require_even()?;
        Ok(kronecker_std(d, m))
    }

    /// `p`-primary component `χ_{S,p}(m) = χ_S(m')` with `m' ≡ m` modulo the
    /// `p`-part of `𝔡_S` and `m' ≡ 1` modulo the rest; zero when `p | m`.
    pub fn chi_s_p(&self, p: u64, m: i64) -> Result<i32> {
        let d = self.require_even()?;
        let pi = p as i64;
        if m.rem_euclid(pi) == 0 {
            return Ok(0);
        }
        let fd = d.abs();
        let mut pe = 1i64;
        while fd % (pe * pi) == 0 {
            pe *= pi;
        }
        let rest = fd / pe;
        // CRT: m' = m + pe·t with m + pe·t ≡ 1 (mod rest).
        let mut mprime = m.rem_euclid(pe.max(1));
        if mprime == 0 {
            mprime = pe;
        }
        while (mprime - 1).rem_euclid(rest) != 0 {
            mprime += pe;
        }
        Ok(kronecker_std(d, mprime))
    }

    /// Local character `χ̲_{S,p}(x) = (x, D_K)_p`.
    pub fn chi_low_s_p(&self, p: u64, x: &Rational) -> Result<i32> {
        let d = self.require_even()?;
        if x.is_zero() {
            return Err(JflError::InvalidInput("local character at zero".into()));
        }
        Ok(hilbert_symbol(x, &int(d), Place::Finite(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{catalog, CATALOG};

    #[test]
    fn catalog_values() {
        let a1 = global_data(&catalog("A1").unwrap()).unwrap();
        assert_eq!(
            (a1.b_s, a1.lambda_s, a1.delta_s, a1.big_d_s),
            (Some(1), Some(1), Some(1), 4)
        );
        let a2 = global_data(&catalog("A2").unwrap()).unwrap();
        assert_eq!((a2.frak_d_s, a2.d_s, a2.big_d_s), (Some(3), 1, 3));
        assert_eq!(a2.chi_s(2).unwrap(), -1);
        let e8 = global_data(&catalog("E8").unwrap()).unwrap();
        assert_eq!(e8.big_d_s, 1);
        assert!(e8.s1.is_empty() && e8.s2.is_empty());
        let d4 = global_data(&catalog("D4").unwrap()).unwrap();
        assert_eq!((d4.frak_d_s, d4.d_s, d4.big_d_s), (Some(1), 2, 2));
        let a1a1 = global_data(&catalog("A1A1").unwrap()).unwrap();
        assert_eq!(
            (a1a1.frak_d_s, a1a1.s1.clone(), a1a1.big_d_s),
            (Some(4), vec![2], 4)
        );
        assert!(a1.chi_s(1).is_err());
    }

    #[test]
    fn chi_components_multiply() {
        for name in CATALOG {
            let g = global_data(&catalog(name).unwrap()).unwrap();
            let Some(fd) = g.frak_d_s else { continue };
            let primes: Vec<u64> = factorize(fd as u64).into_iter().map(|(p, _)| p).collect();
            for m in -50i64..=50 {
                if m == 0 || num_integer::gcd(m, fd) != 1 {
                    continue;
                }
                let prod: i32 = primes.iter().map(|&p| g.chi_s_p(p, m).unwrap()).product();
                assert_eq!(prod, g.chi_s(m).unwrap(), "{name} m={m}");
                for &p in &primes {
                    let low = g.chi_low_s_p(p, &int(m)).unwrap();
                    assert_eq!(low, g.chi_s_p(p, m).unwrap(), "{name} p={p} m={m}");
                }
            }
            for &p in &primes {
                assert_eq!(g.chi_s_p(p, p as i64 * 7).unwrap(), 0);
            }
        }
    }
}
