//! Lattice invariants: catalog relations, direct versus local counts,
//! representability and invariance of `η_p`.

use jfl_core::arith::{int, Rational};
use jfl_core::lattice::{
    a_s_count_direct, a_s_count_local, a_s_local_factor, catalog, disc_group, eta_general,
    forced_k_parity, global_data, is_maximal, s_p, EvenLattice, PrimeClass, CATALOG,
};
use num_traits::Zero;
use proptest::prelude::*;

fn block(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len() + b.len();
    let mut m = vec![vec![0; n]; n];
    for (i, r) in a.iter().enumerate() {
        m[i][..r.len()].copy_from_slice(r);
    }
    for (i, r) in b.iter().enumerate() {
        m[a.len() + i][a.len()..].copy_from_slice(r);
    }
    m
}

/// Maximal lattices beyond the catalog, covering every odd-rank class at 2.
fn extra_lattices() -> Vec<EvenLattice> {
    let a1 = vec![vec![2]];
    let a2 = vec![vec![2, 1], vec![1, 2]];
    let a3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
    let d4 = catalog("D4").unwrap().gram;
    vec![
        EvenLattice::new(vec![vec![6]]).unwrap(),
        EvenLattice::new(vec![vec![10]]).unwrap(),
        EvenLattice::new(a3.clone()).unwrap(),
        EvenLattice::new(block(&a1, &a2)).unwrap(),
        EvenLattice::new(block(&a1, &block(&a1, &a1))).unwrap(),
        EvenLattice::new(block(&a1, &d4)).unwrap(),
        EvenLattice::new(block(&a2, &a2)).unwrap(),
        EvenLattice::new(block(&a3, &a2)).unwrap(),
    ]
}

fn all_lattices() -> Vec<EvenLattice> {
    let mut v: Vec<EvenLattice> = CATALOG.iter().map(|n| catalog(n).unwrap()).collect();
    v.extend(extra_lattices());
    v
}

#[test]
fn catalog_relations() {
    for name in CATALOG {
        let s = catalog(name).unwrap();
        assert!(is_maximal(&s), "{name}");
        let g = global_data(&s).unwrap();
        for l in &g.locals {
            assert!(l.s_p <= 2);
        }
        if g.is_odd() {
            assert_eq!(g.big_d_s * g.delta_s.unwrap(), 2 * s.det());
        } else {
            assert_eq!(g.big_d_s * g.d_s, s.det());
        }
    }
}

#[test]
fn extra_lattices_cover_all_classes_at_two() {
    let mut seen = std::collections::BTreeSet::new();
    for s in extra_lattices() {
        assert!(is_maximal(&s), "{:?}", s.gram);
        let g = global_data(&s).unwrap();
        if g.is_odd() {
            seen.insert(format!("{:?}", g.class(2)));
        }
    }
    for c in [PrimeClass::S0, PrimeClass::S1, PrimeClass::S2] {
        assert!(seen.contains(&format!("{c:?}")), "missing {c:?}");
    }
}

#[test]
fn direct_count_equals_local_product() {
    for s in all_lattices() {
        let g = global_data(&s).unwrap();
        let dg = disc_group(&s);
        let k = forced_k_parity(s.rank());
        for ell in 0..g.big_d_s {
            assert_eq!(
                a_s_count_direct(&g, &dg, ell) as i64,
                a_s_count_local(&g, ell, k),
                "gram {:?} ℓ={ell}",
                s.gram
            );
        }
    }
}

/// `a_{S,p}(ℓ) ≠ 0` for all `p` iff `ℓ = D_{a,α}` for some `(a, α) ∈ 𝒯⁺`.
#[test]
fn representability_by_direct_search() {
    for s in all_lattices().into_iter().filter(|s| s.rank() % 2 == 1) {
        let g = global_data(&s).unwrap();
        let dg = disc_group(&s);
        let k = forced_k_parity(s.rank());
        let d = int(g.big_d_s);
        let mut attained = std::collections::BTreeSet::new();
        for mu in &dg.reps {
            // Small lifts α = μ + x of the coset.
            for shift in -1i64..=1 {
                let alpha: Vec<Rational> = mu.iter().map(|c| c + int(shift)).collect();
                let half = s.norm(&alpha) / int(2);
                for a in -3i64..=110 {
                    let v = &d * (int(a) - &half);
                    if v > Rational::zero() && v <= int(100) {
                        attained.insert(v.to_integer());
                    }
                }
            }
        }
        for ell in 1..=100i64 {
            let local_ok = jfl_core::arith::factorize(g.big_d_s as u64)
                .iter()
                .all(|&(p, _)| a_s_local_factor(&g, p, ell, k) != 0);
            assert_eq!(
                local_ok,
                attained.contains(&ell.into()),
                "gram {:?} ℓ={ell}",
                s.gram
            );
        }
    }
}

#[test]
fn even_rank_s1_is_ramified_set() {
    for s in all_lattices().into_iter().filter(|s| s.rank() % 2 == 0) {
        let g = global_data(&s).unwrap();
        let ram: Vec<u64> = jfl_core::arith::factorize(g.frak_d_s.unwrap() as u64)
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        assert_eq!(g.s1, ram);
    }
}

#[test]
fn spec_examples() {
    assert_eq!(disc_group(&catalog("A1").unwrap()).len(), 2);
    assert_eq!(disc_group(&catalog("A2").unwrap()).len(), 3);
    assert_eq!(disc_group(&catalog("E8").unwrap()).len(), 1);
    assert_eq!(s_p(&catalog("A2").unwrap(), 3), 1);
    assert!(!is_maximal(
        &EvenLattice::new(vec![vec![2, 0], vec![0, 6]]).unwrap()
    ));
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for r in 0..n {
            u[r][i] += c * u[r][j];
        }
    }
    u
}

fn congruent(b: &[Vec<i64>], u: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = b.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = 0i64;
                    for k in 0..n {
                        for l in 0..n {
                            acc += u[k][i] * b[k][l] * u[l][j];
                        }
                    }
                    int(acc)
                })
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn eta_invariant_under_unimodular_change(
        diag in proptest::collection::vec(prop_oneof![-12i64..=-1, 1i64..=12], 1..=5),
        ops in proptest::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..6),
        p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)],
    ) {
        let n = diag.len();
        let b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
        let br: Vec<Vec<Rational>> = b.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let u = unimodular(n, &ops);
        let e1 = eta_general(&br, p).unwrap();
        let e2 = eta_general(&congruent(&b, &u), p).unwrap();
        prop_assert_eq!(e1, e2);
    }
}
