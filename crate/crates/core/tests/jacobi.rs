//! Jacobi forms in `J^M`: Eisenstein coefficients against Cohen's numbers
//! and divisor sums, the Siegel Eisenstein series, theta decomposition and
//! the Dirichlet-series identity.

use std::collections::BTreeMap;

use jfl_core::arith::{int, rat, sigma, HalfPowerNumber, Rational};
use jfl_core::halfint::cohen_h;
use jfl_core::jacobi::{
    assemble_table, disc_index, eisenstein_a, jm_membership, prop12_check, theta_decompose,
    theta_reassemble, JacobiFourierTable, JacobiKind, JacobiMCoeffs, LParams,
};
use jfl_core::lattice::{a_s_count_local, catalog, global_data, CATALOG};
use jfl_core::local_factors::HPoly;
use jfl_core::siegel::{siegel_eis_arith, HalfIntegralMatrix, SiegelOracle};
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn discriminant_indices() {
    let a1 = global_data(&catalog("A1").unwrap()).unwrap();
    for a in 1..6 {
        for r in -3i64..=3 {
            let idx = disc_index(&a1, a, &[rat(r, 2)]).unwrap();
            assert_eq!(idx.delta, 4 * a - r * r);
            assert_eq!(idx.d, 4 * a - r * r);
        }
        assert_eq!(disc_index(&a1, a, &[int(0)]).unwrap().d, 4 * a);
    }
    assert!(disc_index(&a1, 1, &[rat(1, 3)]).is_err());
    let a2 = global_data(&catalog("A2").unwrap()).unwrap();
    assert_eq!(disc_index(&a2, 1, &[int(0), int(0)]).unwrap().d, 3);
    let d4 = global_data(&catalog("D4").unwrap()).unwrap();
    assert!(disc_index(&d4, 1, &[rat(1, 2), int(0), int(0), int(0)]).is_err());
}

#[test]
fn eisenstein_coefficients_match_cohen_numbers() {
    let g = global_data(&catalog("A1").unwrap()).unwrap();
    for kappa in [4i64, 6] {
        for n in 1..=500u64 {
            let a = eisenstein_a(&g, kappa, n).unwrap();
            assert_eq!(a, cohen_h(kappa - 1, n).unwrap(), "κ={kappa} N={n}");
            if matches!(n % 4, 1 | 2) {
                assert!(a.is_zero(), "κ={kappa} N={n}");
            }
        }
    }
}

#[test]
fn unimodular_coefficients_are_divisor_sums() {
    let g = global_data(&catalog("E8").unwrap()).unwrap();
    for kappa in [6i64, 8, 10] {
        let k = kappa - 4;
        for n in 1..=200u64 {
            let want = Rational::from_integer(sigma((k - 1) as u32, n));
            assert_eq!(eisenstein_a(&g, kappa, n).unwrap(), want, "κ={kappa} N={n}");
        }
    }
    assert!(eisenstein_a(&g, 5, 1).is_err());
}

#[test]
fn eisenstein_support_is_representable() {
    for name in CATALOG {
        let g = global_data(&catalog(name).unwrap()).unwrap();
        let base = g.n.div_ceil(2) as i64;
        for kappa in [base + 2 + base % 2, base + 4 + base % 2] {
            let k = kappa - base;
            let mut nonzero = 0;
            for n in 1..=500u64 {
                let a = eisenstein_a(&g, kappa, n).unwrap();
                if !a.is_zero() {
                    nonzero += 1;
                    assert_ne!(
                        a_s_count_local(&g, n as i64, k),
                        0,
                        "{name} κ={kappa} N={n}"
                    );
                }
            }
            assert!(nonzero > 100, "{name} κ={kappa}");
        }
    }
}

/// `c_{E_κ}(S_{a,α}/2) / A(D_{a,α})` is one constant for the degree-two
/// Siegel Eisenstein series and `S = (2)`.
#[test]
fn siegel_eisenstein_ratio_is_constant() {
    let g = global_data(&catalog("A1").unwrap()).unwrap();
    let mut oracle = SiegelOracle::new();
    for kappa in [4i64, 6] {
        let mut ratio: Option<Rational> = None;
        for a in 1..=6i64 {
            for r in 0..=a {
                if r * r >= 4 * a {
                    continue;
                }
                let h = HalfIntegralMatrix::from_twice(vec![vec![2, r], vec![r, 2 * a]]).unwrap();
                let c = siegel_eis_arith(&h, kappa, &mut oracle).unwrap();
                let d = disc_index(&g, a, &[rat(r, 2)]).unwrap().d;
                let big_a = eisenstein_a(&g, kappa, d as u64).unwrap();
                assert!(!big_a.is_zero());
                let q = c / big_a;
                match &ratio {
                    None => ratio = Some(q),
                    Some(r0) => assert_eq!(&q, r0, "κ={kappa} a={a} r={r}"),
                }
            }
        }
    }
}

#[test]
fn tables_factor_through_the_discriminant() {
    for name in ["A1", "A2", "D4", "E8"] {
        let g = global_data(&catalog(name).unwrap()).unwrap();
        let kappa = if name == "A1" { 4 } else { 6 };
        let m = JacobiMCoeffs::eisenstein(g.clone(), kappa, 60 * g.big_d_s as u64).unwrap();
        let t = assemble_table(&m, 8).unwrap();
        assert!(jm_membership(&t), "{name}");
        for (&(a, mu), v) in &t.entries {
            assert_eq!(
                Some(v),
                m.get(m.key(a, &t.disc.reps[mu]).unwrap())
                    .or(Some(&Rational::zero()))
            );
        }
        let th = theta_decompose(&t);
        assert_eq!(th.components.len(), t.disc.len());
        assert_eq!(theta_reassemble(&g, &th).unwrap(), t);
    }
    let a1 = global_data(&catalog("A1").unwrap()).unwrap();
    let m = JacobiMCoeffs::new(a1.clone(), 4, BTreeMap::new(), JacobiKind::Cusp).unwrap();
    let t = assemble_table(&m, 5).unwrap();
    assert!(t.entries.values().all(Zero::is_zero));
    assert!(jm_membership(&t));
    // S = (2): (a, 0) reads c(4a), (a, 1/2) reads c(4a - 1).
    let full = JacobiMCoeffs::eisenstein(a1, 4, 40).unwrap();
    let t = assemble_table(&full, 10).unwrap();
    for a in 1..=10 {
        assert_eq!(t.entries[&(a, 0)], full.c[&(4 * a)]);
        assert_eq!(t.entries[&(a, 1)], full.c[&(4 * a - 1)]);
    }
}

#[test]
fn perturbed_table_leaves_jm() {
    // A1A1 has the two cosets (1/2, 0) and (0, 1/2) of equal norm.
    let g = global_data(&catalog("A1A1").unwrap()).unwrap();
    let m = JacobiMCoeffs::eisenstein(g, 4, 200).unwrap();
    let t = assemble_table(&m, 6).unwrap();
    assert!(jm_membership(&t));
    let mut bad = t.clone();
    let key = *t
        .entries
        .keys()
        .find(|&&(a, mu)| a == 3 && mu == 1)
        .unwrap();
    *bad.entries.get_mut(&key).unwrap() += Rational::one();
    assert!(!jm_membership(&bad));
}

/// The Dirichlet-series identity for the Jacobi Eisenstein series of
/// `S = (2)`, whose Satake parameters are `p^{±(k-1/2)}`.
#[test]
fn dirichlet_identity_for_eisenstein_series() {
    let g = global_data(&catalog("A1").unwrap()).unwrap();
    let kappa = 4;
    let k = 3;
    let m_max = 10u64;
    let coeffs = JacobiMCoeffs::eisenstein(g, kappa, 4 * 2 * m_max * m_max).unwrap();
    let t = assemble_table(&coeffs, 2 * (m_max * m_max) as i64).unwrap();
    let l = LParams::from_fn(m_max, |p| {
        let up = HalfPowerNumber::half_pow(p, 2 * k - 1);
        let down = HalfPowerNumber::half_pow(p, 1 - 2 * k);
        (HPoly::one() - HPoly::monomial(up, 1)) * (HPoly::one() - HPoly::monomial(down, 1))
    });
    for (a, r) in [(1i64, 0i64), (1, 1), (2, 1)] {
        let alpha = [rat(r, 2)];
        let rep = prop12_check(&t, kappa, &l, a, &alpha, m_max).unwrap();
        assert!(rep.holds(), "a={a} r={r} mismatches {:?}", rep.mismatches);
        assert_eq!(
            rep.lhs[1],
            HalfPowerNumber::from_rational(t.lookup(a, &alpha).unwrap())
        );
    }
    // Perturbing c(4a·p² - r²p²) breaks the p-th coefficient.
    let mut bad = t.clone();
    let idx = bad.coset_of(&[int(0)]).unwrap();
    *bad.entries.get_mut(&(9, idx)).unwrap() += Rational::one();
    let rep = prop12_check(&bad, kappa, &l, 1, &[int(0)], m_max).unwrap();
    assert!(rep.mismatches.contains(&3), "{:?}", rep.mismatches);
    // Missing entries are reported.
    let small = assemble_table(&coeffs, 4).unwrap();
    assert!(prop12_check(&small, kappa, &l, 1, &[int(0)], m_max).is_err());
}

fn random_table(name: &str, a_max: i64, vals: &[i64]) -> JacobiFourierTable {
    let g = global_data(&catalog(name).unwrap()).unwrap();
    let mut t = JacobiFourierTable::zero(g, a_max);
    for (v, x) in t.entries.values_mut().zip(vals.iter().cycle()) {
        *v = int(*x);
    }
    t
}

proptest! {
    #[test]
    fn theta_round_trip(vals in prop::collection::vec(-9i64..9, 1..40), a_max in 1i64..6,
                        name in prop::sample::select(vec!["A1", "A1A1", "A2", "D4"])) {
        let t = random_table(name, a_max, &vals);
        let th = theta_decompose(&t);
        prop_assert_eq!(theta_reassemble(&t.global, &th).unwrap(), t);
    }
}
