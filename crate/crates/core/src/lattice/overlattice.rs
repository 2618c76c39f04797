//! Maximal even overlattices at a single prime.

use num_traits::ToPrimitive;

use super::local::kernel_mod_p;
use super::EvenLattice;
use crate::arith::{int, ord_p, rat, Rational};
use crate::error::{JflError, Result};

fn inv_mod(a: i64, p: i64) -> i64 {
    (1..p)
        .find(|&u| (a * u).rem_euclid(p) == 1)
        .expect("unit mod p")
}

fn half_norm_i128(g: &[Vec<i64>], c: &[i64]) -> i128 {
    let mut acc = 0i128;
    for (i, row) in g.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            acc += i128::from(c[i]) * i128::from(v) * i128::from(c[j]);
        }
    }
    acc / 2
}

/// An isotropic class of order `p` in the discriminant form, as an integer
/// vector `c` with `c/p ∈ L*` and `S[c/p]/2 ∈ Z`.
fn isotropic_class(g: &[Vec<i64>], p: u64) -> Option<Vec<i64>> {
    let ker = kernel_mod_p(g, p);
    let pi = p as i64;
    let total = (pi as u64).pow(ker.len() as u32);
    let n = g.len();
    for idx in 1..total {
        let mut c = vec![0i64; n];
        let mut t = idx;
        for b in &ker {
            let coef = (t % p) as i64;
            t /= p;
            for (ci, bi) in c.iter_mut().zip(b) {
                *ci = (*ci + coef * bi).rem_euclid(pi);
            }
        }
        if half_norm_i128(g, &c).rem_euclid(i128::from(pi * pi)) == 0 {
            return Some(c);
        }
    }
    None
}

/// A lattice containing `Z^n` with index a power of `p`, maximal at `p` for
/// the form `S`, together with `f` such that the index is `p^f`. The Gram
/// matrix is expressed in a basis of the overlattice.
pub fn maximal_overlattice_at(s: &EvenLattice, p: u64) -> Result<(EvenLattice, i64)> {
    let mut g = s.gram.clone();
    let n = g.len();
    let pi = p as i64;
    let mut f = 0;
    while let Some(c) = isotropic_class(&g, p) {
        let j = c
            .iter()
            .position(|&x| x.rem_euclid(pi) != 0)
            .expect("nonzero class");
        let u = inv_mod(c[j], pi);
        let mut w: Vec<Rational> = c.iter().map(|&x| rat(x * u, pi)).collect();
        w[j] = rat(1, pi);
        let mut t: Vec<Vec<Rational>> = (0..n)
            .map(|r| (0..n).map(|q| int(i64::from(r == q))).collect())
            .collect();
        for r in 0..n {
            t[r][j] = w[r].clone();
        }
        let mut next = vec![vec![0i64; n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = int(0);
                for x in 0..n {
                    for y in 0..n {
                        if g[x][y] != 0 {
                            acc += &t[x][a] * int(g[x][y]) * &t[y][b];
                        }
                    }
                }
                if !acc.is_integer() || (a == b && !(acc.clone() / int(2)).is_integer()) {
                    return Err(JflError::Inconsistent(
                        "overlattice step left the even lattices".into(),
                    ));
                }
                next[a][b] = acc.to_integer().to_i64().expect("entry exceeds i64");
            }
        }
        g = next;
        f += 1;
    }
    let l = EvenLattice::new(g)?;
    debug_assert_eq!(
        i64::from(ord_p(s.det(), p)) - i64::from(ord_p(l.det(), p)),
        2 * f
    );
    Ok((l, f))
}
