//! The discriminant group `Ξ = L*/L` and maximality.

use num_traits::Zero;

use super::smith::smith_normal_form;
use super::EvenLattice;
use crate::arith::{rat, Rational};

/// Coset representatives of `L*/L` reduced to `[0,1)^n`, sorted
/// lexicographically, with elementary divisors and norms `S[μ]/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscGroup {
    pub reps: Vec<Vec<Rational>>,
    pub orders: Vec<i64>,
    pub norms: Vec<Rational>,
}

impl DiscGroup {
    #[must_use]
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `L* = S⁻¹Z^n = V·D⁻¹·Z^n` from `U·S·V = D`.
#[must_use]
pub fn disc_group(s: &EvenLattice) -> DiscGroup {
    let n = s.rank();
    let sm = smith_normal_form(&s.gram);
    let mut reps: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]];
    for i in 0..n {
        let d = sm.d[i] as i64;
        if d == 1 {
            continue;
        }
        let g: Vec<Rational> = (0..n).map(|r| rat(sm.v[r][i] as i64, d)).collect();
        let mut next = Vec::with_capacity(reps.len() * d as usize);
        for base in &reps {
            for c in 0..d {
                next.push(
                    base.iter()
                        .zip(&g)
                        .map(|(b, gi)| frac(&(b + gi * Rational::from_integer(c.into()))))
                        .collect(),
                );
            }
        }
        reps = next;
    }
    reps.sort();
    reps.dedup();
    let norms = reps
        .iter()
        .map(|mu| s.norm(mu) / Rational::from_integer(2.into()))
        .collect();
    let orders = sm.d.iter().filter(|&&d| d > 1).map(|&d| d as i64).collect();
    DiscGroup {
        reps,
        orders,
        norms,
    }
}

/// True iff no nonzero coset has `S[μ]/2 ∈ Z`.
#[must_use]
pub fn is_maximal(s: &EvenLattice) -> bool {
    let dg = disc_group(s);
    dg.reps
        .iter()
        .zip(&dg.norms)
        .all(|(mu, q)| mu.iter().all(Zero::is_zero) || !q.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{catalog, CATALOG};

    #[test]
    fn orders_match_determinant() {
        for name in CATALOG {
            let s = catalog(name).unwrap();
            let dg = disc_group(&s);
            assert_eq!(dg.len() as i64, s.det());
            assert!(dg.reps[0].iter().all(Zero::is_zero));
            for mu in &dg.reps {
                assert!(s.apply(mu).iter().all(|x| x.is_integer()));
            }
            assert!(is_maximal(&s), "{name}");
        }
    }

    #[test]
    fn non_maximal_example() {
        let s = EvenLattice::new(vec![vec![2, 0], vec![0, 6]]).unwrap();
        assert!(!is_maximal(&s));
    }
}
