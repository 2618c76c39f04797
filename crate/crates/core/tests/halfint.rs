//! Half-integral weight forms: Cohen–Eisenstein eigenproperty, the plus cusp
//! form of weight 19/2 and its Shimura correspondent, and the coefficient
//! operators.

use jfl_core::arith::{int, kronecker_symbol, pow_rat, psi_bar, QSeries};
use jfl_core::halfint::{
    cohen_eisenstein, condition_i_check, cusp_plus_eigenbasis, hecke_eigenvalue, hecke_halfint,
    in_d_k, lemma21_checks, level_one_cusp_eigenform, p_op, plus_project, q_op, u_k_op, u_op,
};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn cohen_eisenstein_is_hecke_eigen() {
    for k in 2..=6i64 {
        let h = cohen_eisenstein(k, 200).unwrap().series();
        assert_eq!(plus_project(&h, k), h, "k={k}");
        for p in [2u64, 3, 5] {
            let want = int(1) + pow_rat(&int(p as i64), 2 * k - 1);
            assert_eq!(hecke_eigenvalue(p, &h, k), Some(want), "k={k} p={p}");
        }
    }
}

#[test]
fn weight_nineteen_halves_matches_weight_eighteen() {
    assert!(cusp_plus_eigenbasis(2, 60).unwrap().is_empty());
    let basis = cusp_plus_eigenbasis(9, 400).unwrap();
    assert_eq!(basis.len(), 1);
    let g = &basis[0].series;
    let f = level_one_cusp_eigenform(18, 30).unwrap();
    for p in [2u64, 3, 5] {
        assert_eq!(
            hecke_eigenvalue(p, g, 9),
            Some(f.coeff(p as usize).clone()),
            "p={p}"
        );
        // Coefficientwise Shimura relation.
        let t = hecke_halfint(p, g, 9);
        for m in 0..=t.nmax() {
            assert_eq!(*t.coeff(m), f.coeff(p as usize) * g.coeff(m));
        }
    }
}

#[test]
fn p_and_q_operators() {
    let k = 3;
    let h = cohen_eisenstein(k, 300).unwrap().series();
    for (p, eta) in [(3u64, 1), (3, -1), (5, 1), (7, -1)] {
        let out = p_op(p, &h, k, eta);
        assert!(condition_i_check(&out, p, eta, k), "p={p} η={eta}");
        assert!(!condition_i_check(&h, p, eta, k));
    }
    let l = 3u64;
    let q = q_op(l, &h, k);
    for m in 1..=q.nmax() {
        if !in_d_k(m as u64, k) {
            assert!(q.coeff(m).is_zero());
            continue;
        }
        if m % 3 != 0 {
            let leg = kronecker_symbol(-(m as i64), 3);
            let want = h.coeff(9 * m) - int(i64::from(leg)) * int(27) * h.coeff(m);
            assert_eq!(*q.coeff(m), want, "m={m}");
        }
    }
    // Q(ℓ) = (ℓ+1) U_k(ℓ²) - ℓ T(ℓ²).
    let u = u_k_op(3, &h, k);
    let t = hecke_halfint(3, &h, k);
    for m in 0..=q.nmax() {
        if in_d_k(m as u64, k) {
            assert_eq!(*q.coeff(m), int(4) * u.coeff(m) - int(3) * t.coeff(m));
        }
    }
    let zero = QSeries::zero(1, 50);
    assert!(p_op(3, &zero, k, 1).is_zero());
    assert!(q_op(3, &zero, k).is_zero());
    assert!(condition_i_check(&zero, 3, 1, k));
}

#[test]
fn sign_lemma_conditions() {
    let k = 4;
    let p = 3u64;
    let eps = 1;
    // Synthetic g: free values on m with p ∤ m, c(p²m) = ε p^{k-1} c(m),
    // zero where ψ̄_p((-1)^k m) = ε.
    let n = 400;
    let mut g = QSeries::zero(1, n);
    let scale = int(27);
    for m in 1..=n {
        let mut base = m;
        let mut steps = 0;
        while base % 9 == 0 {
            base /= 9;
            steps += 1;
        }
        if base % 3 == 0 {
            continue;
        }
        let psi = psi_bar(&int(base as i64), p);
        if psi == eps || !in_d_k(m as u64, k) {
            continue;
        }
        g.set_coeff(m, int((base % 7) as i64 + 1) * pow_rat(&scale, steps));
    }
    let mut f = QSeries::zero(1, 5);
    f.set_coeff(1, int(1));
    f.set_coeff(3, int(27));
    let r = lemma21_checks(&g, &f, k, p, eps);
    assert!(
        r.g_recursion && r.g_vanishing && r.f_coefficient && r.consistent(),
        "{r:?}"
    );
    let s18 = level_one_cusp_eigenform(18, 5).unwrap();
    assert!(!lemma21_checks(&g, &s18, 9, 2, 1).f_coefficient);
    let zero = QSeries::zero(1, 50);
    let r0 = lemma21_checks(&zero, &zero, k, p, eps);
    assert!(r0.g_recursion && r0.g_vanishing);
}

proptest! {
    #[test]
    fn plus_projection_is_idempotent(c in prop::collection::vec(-50i64..50, 1..80), k in 0i64..12) {
        let s = QSeries::from_coeffs(1, c.iter().map(|&x| int(x)).collect());
        let once = plus_project(&s, k);
        prop_assert_eq!(plus_project(&once, k), once.clone());
        for m in 0..=s.nmax() {
            if !in_d_k(m as u64, k) {
                prop_assert!(once.coeff(m).is_zero());
            }
        }
    }

    #[test]
    fn u_operator_reindexes(c in prop::collection::vec(-50i64..50, 1..80), a in 1usize..6) {
        let s = QSeries::from_coeffs(1, c.iter().map(|&x| int(x)).collect());
        let u = u_op(a, &s);
        prop_assert_eq!(u.nmax(), s.nmax() / a);
        for m in 0..=u.nmax() {
            prop_assert_eq!(u.coeff(m), s.coeff(a * m));
        }
        prop_assert_eq!(u_op(1, &s), s);
    }
}
