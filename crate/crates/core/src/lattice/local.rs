//! Local data at a prime: the radical dimension `s_p`, the normalized Hasse
//! invariants `η_p(S)`, `η_p(S/2)` and `ξ_p = χ_S(p)`.

use serde::Serialize;

use super::quadform::eta_general;
use super::{is_maximal, EvenLattice};
use crate::arith::{kronecker_std, rat, Rational};
use crate::error::{JflError, Result};

/// Membership of `p` in `𝔖_0`, `𝔖_1` or `𝔖_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PrimeClass {
    S0,
    S1,
    S2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub p: u64,
    pub s_p: usize,
    pub eta_p: i32,
    pub eta_p_half: i32,
    pub xi_p: Option<i32>,
    pub class: PrimeClass,
}

/// Kernel of an integer matrix reduced mod a prime `p`, as a basis of
/// vectors with entries in `0..p`.
pub(crate) fn kernel_mod_p(a: &[Vec<i64>], p: u64) -> Vec<Vec<i64>> {
    let n = a.len();
    let pm = p as i64;
    let modp = |x: i64| x.rem_euclid(pm);
    let inv = |x: i64| {
        let mut r = 1i64;
        let mut b = modp(x);
        let mut e = pm - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % pm;
            }
            b = b * b % pm;
            e >>= 1;
        }
        r
    };
    let mut m: Vec<Vec<i64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| modp(x)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let iv = inv(m[row][col]);
        for c in 0..n {
            m[row][c] = m[row][c] * iv % pm;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..n {
                    m[r][c] = modp(m[r][c] - f * m[row][c]);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0i64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = modp(-m[r][f]);
            }
            v
        })
        .collect()
}

fn half_norm(s: &EvenLattice, x: &[i64]) -> i64 {
    let mut acc = 0i64;
    for (i, row) in s.gram.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            acc += x[i] * v * x[j];
        }
    }
    acc / 2
}

/// `s_p = dim Rad(V_p)`, the radical of `q_p[x] = S[x]/2 mod p` on `L/pL`.
#[must_use]
pub fn s_p(s: &EvenLattice, p: u64) -> usize {
    let ker = kernel_mod_p(&s.gram, p);
    if p != 2 {
        return ker.len();
    }
    // On the bilinear radical q_2 is additive, so Rad is the kernel of a
    // linear functional.
    let nonzero = ker.iter().any(|x| half_norm(s, x).rem_euclid(2) != 0);
    ker.len() - usize::from(nonzero)
}

fn scaled(s: &EvenLattice, c: &Rational) -> Vec<Vec<Rational>> {
    s.gram_rat()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x * c).collect())
        .collect()
}

/// Local data of `s` at `p` without the maximality check.
pub(crate) fn local_data_unchecked(
    s: &EvenLattice,
    p: u64,
    disc_k: Option<i64>,
) -> Result<LocalData> {
    let sp = s_p(s, p);
    let class = match sp {
        0 => PrimeClass::S0,
        1 => PrimeClass::S1,
        2 => PrimeClass::S2,
        _ => {
            return Err(JflError::NotMaximal(format!(
                "s_{p} = {sp} exceeds 2, so the lattice is not maximal"
            )))
        }
    };
    let eta_p = eta_general(&s.gram_rat(), p)?;
    let eta_p_half = eta_general(&scaled(s, &rat(1, 2)), p)?;
    let xi_p = disc_k.map(|d| kronecker_std(d, p as i64));
    Ok(LocalData {
        p,
        s_p: sp,
        eta_p,
        eta_p_half,
        xi_p,
        class,
    })
}

/// Signed fundamental discriminant of `Q(√((-1)^{n/2} det S))` for even `n`.
#[must_use]
pub(crate) fn disc_k(s: &EvenLattice) -> Option<i64> {
    let n = s.rank();
    n.is_multiple_of(2).then(|| {
        let sign = if (n / 2).is_multiple_of(2) { 1 } else { -1 };
        crate::arith::fundamental_discriminant(sign * s.det())
    })
}

/// Local data at `p`; rejects non-maximal lattices.
pub fn local_data(s: &EvenLattice, p: u64) -> Result<LocalData> {
    if !is_maximal(s) {
        return Err(JflError::NotMaximal(
            "lattice admits an even overlattice".into(),
        ));
    }
    local_data_unchecked(s, p, disc_k(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog;

    #[test]
    fn examples() {
        let a1 = catalog("A1").unwrap();
        let d = local_data(&a1, 3).unwrap();
        assert_eq!((d.s_p, d.eta_p, d.class), (0, 1, PrimeClass::S0));
        let a2 = catalog("A2").unwrap();
        assert_eq!(local_data(&a2, 3).unwrap().class, PrimeClass::S1);
        let e8 = catalog("E8").unwrap();
        assert_eq!(local_data(&e8, 2).unwrap().class, PrimeClass::S0);
        assert_eq!(s_p(&catalog("D4").unwrap(), 2), 2);
        assert_eq!(s_p(&catalog("A1A1").unwrap(), 2), 1);
        assert_eq!(s_p(&a1, 2), 0);
    }

    #[test]
    fn q2_independent_of_lift() {
        for name in crate::lattice::CATALOG {
            let s = catalog(name).unwrap();
            for x in kernel_mod_p(&s.gram, 2) {
                let base = half_norm(&s, &x).rem_euclid(2);
                for i in 0..x.len() {
                    let mut y = x.clone();
                    y[i] += 2;
                    assert_eq!(half_norm(&s, &y).rem_euclid(2), base);
                }
            }
        }
    }

    #[test]
    fn rejects_non_maximal() {
        let s = EvenLattice::new(vec![vec![2, 0], vec![0, 6]]).unwrap();
        assert!(local_data(&s, 2).is_err());
    }
}
