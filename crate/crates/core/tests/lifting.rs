//! Lifts of elliptic eigenforms: the weight-9 lift for `S = (2)` against
//! the extracted half-integral form, the Dirichlet-series identity, the
//! Ikeda coefficients, the Maass lift, the twisted forms and the symbolic
//! local identities.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use jfl_core::arith::{
    int, rat, sigma, sign_pow, FieldDef, HalfPowerNumber, NumberFieldElem, QSeries, Rational, Ring,
};
use jfl_core::halfint::{cusp_plus_eigenbasis, eisenstein_level_one, level_one_cusp_eigenform};
use jfl_core::jacobi::{eisenstein_a, jm_membership, prop12_check, JacobiKind, JacobiMCoeffs};
use jfl_core::lattice::{catalog, disc_group, global_data, EvenLattice, GlobalData};
use jfl_core::lifting::{
    c_phi_even, c_phi_even_with, c_phi_odd, epsilon_eta, even_euler_factor, f_p_coeffs,
    f_sim_by_sum, f_sim_coeffs, f_star_coeffs, ikeda_coefficient, l_by_recurrence, lemma54_check,
    lemma54_real, lemma73_check, lift_assemble, lift_table_at, maass_display_even,
    maass_display_odd, maass_lift, maass_table, odd_euler_factor, remark71_check, satake_eval,
    sk_consistency, EigenData, LiftInput, LiftInputEven, LiftInputOdd, MaassEta, SatakeParam,
};
use jfl_core::local_factors::{l_poly, HPoly};
use jfl_core::siegel::{HalfIntegralMatrix, SiegelOracle};
use num_traits::{One, Zero};
use proptest::prelude::*;

const PREC: usize = 400;

/// `(f, g)` for weight 18 and 9 + 1/2, extracted once.
fn weight_nine_pair() -> &'static (EigenData, QSeries) {
    static PAIR: OnceLock<(EigenData, QSeries)> = OnceLock::new();
    PAIR.get_or_init(|| {
        let f = level_one_cusp_eigenform(18, PREC).unwrap();
        let basis = cusp_plus_eigenbasis(9, PREC).unwrap();
        assert_eq!(basis.len(), 1);
        let f = EigenData::from_series(18, 1, &f, BTreeMap::new()).unwrap();
        (f, basis[0].series.clone())
    })
}

fn weight_nine_input() -> LiftInputOdd {
    let (f, g) = weight_nine_pair();
    let a1 = global_data(&catalog("A1").unwrap()).unwrap();
    LiftInputOdd::new(a1, 9, 1, 1, f.clone(), g).unwrap()
}

fn lattice(gram: Vec<Vec<i64>>) -> GlobalData {
    global_data(&EvenLattice::new(gram).unwrap()).unwrap()
}

/// Normalized Eisenstein series of weight `w` as an eigenform with
/// `c(m) = σ_{w-1}(m)`.
fn eisenstein_eigendata(w: u32, prec: usize) -> EigenData {
    let e = eisenstein_level_one(w, prec);
    let e = e.scale(&(Rational::one() / e.coeff(1)));
    EigenData::from_series(i64::from(w), 1, &e, BTreeMap::new()).unwrap()
}

#[test]
fn euler_factors_from_satake_data() {
    let t = HalfPowerNumber::from_rational(rat(26, 5));
    let pair = SatakeParam::Pair {
        trace: t.clone(),
        c: 1,
    };
    let single = SatakeParam::Single {
        alpha: HalfPowerNumber::from_int(5),
        alpha_inv: HalfPowerNumber::from_rational(rat(1, 5)),
    };
    assert_eq!(odd_euler_factor(&pair), odd_euler_factor(&single));
    // (1 - 25X)(1 - X/25)(1 - X).
    let want = HPoly::from_terms([
        (0, HalfPowerNumber::one()),
        (1, HalfPowerNumber::from_rational(rat(-626, 25))),
        (2, HalfPowerNumber::one()),
    ]) * HPoly::from_terms([(0, HalfPowerNumber::one()), (1, -HalfPowerNumber::one())]);
    assert_eq!(even_euler_factor(&pair, 1), want);
    assert_eq!(even_euler_factor(&single, 1), want);
    assert_eq!(
        l_by_recurrence(3, &t),
        t.clone() * t.clone() * t.clone() - t.scale(&int(2))
    );
}

#[test]
fn weight_nine_lift_reproduces_g() {
    let input = weight_nine_input();
    let mut compared = 0;
    for n in 1..=PREC as u64 {
        let c = c_phi_odd(n, &input).unwrap();
        if matches!(n % 4, 0 | 3) {
            assert_eq!(&c, input.g.coeff(n as usize), "N={n}");
            compared += 1;
        } else {
            assert!(c.is_zero(), "N={n} is not representable");
        }
    }
    assert_eq!(compared, 200);
    assert!(!input.g.coeff(3).is_zero());
}

#[test]
fn zero_g_lifts_to_zero() {
    let (f, g) = weight_nine_pair();
    let zero = g.scale(&int(0));
    let a1 = global_data(&catalog("A1").unwrap()).unwrap();
    let input = LiftInputOdd::new(a1, 9, 1, 1, f.clone(), &zero).unwrap();
    for n in [3u64, 4, 7, 8, 11, 12, 15, 16] {
        assert!(c_phi_odd(n, &input).unwrap().is_zero());
    }
}

#[test]
fn lift_inputs_are_validated() {
    let (f, g) = weight_nine_pair();
    let a1 = global_data(&catalog("A1").unwrap()).unwrap();
    assert!(LiftInputOdd::new(a1.clone(), 8, 1, 1, f.clone(), g).is_err());
    assert!(LiftInputOdd::new(a1.clone(), 9, 2, 1, f.clone(), g).is_err());
    let mut broken = f.clone();
    broken.coeffs[2] += int(1);
    assert!(LiftInputOdd::new(a1, 9, 1, 1, broken, g).is_err());
    let a2 = global_data(&catalog("A2").unwrap()).unwrap();
    assert!(LiftInputOdd::new(a2.clone(), 9, 1, 1, f.clone(), g).is_err());
    let e8 = global_data(&catalog("E8").unwrap()).unwrap();
    let e = eisenstein_eigendata(6, 50);
    assert!(LiftInputEven::new(e8.clone(), 6, 1, e.clone(), false).is_err());
    assert!(LiftInputEven::new(e8.clone(), 5, 1, e.clone(), true).is_err());
    assert!(LiftInputEven::new(e8, 6, 1, e, true).is_ok());
}

#[test]
fn assembled_lift_is_rational_and_in_jm() {
    let input = LiftInput::Odd(weight_nine_input());
    let (m, t) = lift_assemble(&input, 6).unwrap();
    assert!(jm_membership(&t));
    assert_eq!(m.kappa, 10);
    for (key, v) in &m.c {
        assert_eq!(v, weight_nine_pair().1.coeff(*key as usize), "Δ={key}");
    }
    for a in 1..=6i64 {
        for r in -6i64..=6 {
            if 4 * a > r * r {
                let v = t.lookup(a, &[rat(r, 2)]).unwrap();
                assert_eq!(&v, weight_nine_pair().1.coeff((4 * a - r * r) as usize));
            }
        }
    }
}

#[test]
fn weight_nine_lift_satisfies_dirichlet_identity() {
    let input = LiftInput::Odd(weight_nine_input());
    let points: Vec<(i64, Vec<Rational>)> = (1..=20i64).map(|m| (m * m, vec![rat(m, 2)])).collect();
    let t = lift_table_at(&input, &points).unwrap();
    let l = input.l_params(20).unwrap();
    let rep = prop12_check(&t, input.kappa(), &l, 1, &[rat(1, 2)], 20).unwrap();
    assert!(rep.holds(), "mismatches at {:?}", rep.mismatches);

    // A wrong Euler factor at 2 must be detected.
    let mut wrong = l.clone();
    wrong.factors.insert(
        2,
        HPoly::from_terms([(0, HalfPowerNumber::one()), (2, HalfPowerNumber::one())]),
    );
    let bad = prop12_check(&t, input.kappa(), &wrong, 1, &[rat(1, 2)], 20).unwrap();
    assert!(!bad.holds());
}

#[test]
fn ikeda_coefficients_match_the_lift() {
    let input = weight_nine_input();
    let mut oracle = SiegelOracle::new();
    let rep = sk_consistency(&input, &input.f, 6, &mut oracle).unwrap();
    assert!(rep.holds(), "mismatches {:?}", rep.mismatches);
    assert_eq!(rep.rows.len(), 23);

    let mut perturbed = input.f.clone();
    perturbed.coeffs[2] += int(1);
    let rep = sk_consistency(&input, &perturbed, 6, &mut oracle).unwrap();
    assert!(!rep.holds());

    let h = HalfIntegralMatrix::from_twice(vec![vec![2, 1], vec![1, 2]]).unwrap();
    let v = ikeda_coefficient(&h, &input.f, &input.g, &mut oracle).unwrap();
    assert_eq!(&v, input.g.coeff(3));
}

#[test]
fn half_integral_recursion_on_real_data() {
    let input = weight_nine_input();
    let rep = lemma54_real(&input, &[2, 3, 5], 4).unwrap();
    assert!(rep.holds(), "{:?}", rep.failures);
    assert!(rep.cases > 100);
}

#[test]
fn odd_rank_local_identities() {
    // (6) and A2 ⊕ A1 have 𝔖₁ = {3}; A1³ and A2 ⊕ (6) have 𝔖₂ = {2} and {3}.
    let s1_lattices = [
        lattice(vec![vec![6]]),
        lattice(vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 2]]),
    ];
    let s2_lattices = [
        lattice(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]),
        lattice(vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 6]]),
    ];
    for g in &s1_lattices {
        assert_eq!(g.s1, vec![3]);
        let k = if g.n == 1 { 3 } else { 2 };
        for part in [2u8, 4] {
            let rep = lemma54_check(g, k, part, 4).unwrap();
            assert!(rep.holds(), "part {part}: {:?}", rep.failures);
        }
    }
    for g in &s2_lattices {
        assert_eq!(g.s2.len(), 1);
        for part in [3u8, 5] {
            let rep = lemma54_check(g, 2, part, 4).unwrap();
            assert!(rep.holds(), "part {part}: {:?}", rep.failures);
        }
    }
    assert!(lemma54_check(&s1_lattices[0], 3, 7, 4).is_err());
    let a2 = global_data(&catalog("A2").unwrap()).unwrap();
    assert!(lemma54_check(&a2, 3, 2, 4).is_err());
}

#[test]
fn even_rank_local_identities() {
    // A2 has 𝔖₁ = {3}; 2·A2 has 𝔖₁ = {3}, 𝔖₂ = {2}; D4 has 𝔖₂ = {2}.
    let a2 = global_data(&catalog("A2").unwrap()).unwrap();
    let a1a1 = global_data(&catalog("A1A1").unwrap()).unwrap();
    let d4 = global_data(&catalog("D4").unwrap()).unwrap();
    let two_a2 = lattice(vec![vec![4, 2], vec![2, 4]]);
    let cases: [(&GlobalData, i64, &[u8]); 4] = [
        (&a2, 3, &[1, 2]),
        (&a1a1, 5, &[1, 2]),
        (&d4, 4, &[1, 3, 4]),
        (&two_a2, 3, &[1, 2, 3, 4]),
    ];
    for (g, k, parts) in cases {
        for &part in parts {
            let rep = lemma73_check(g, k, part, 4).unwrap();
            assert!(
                rep.holds(),
                "{:?} part {part}: {:?}",
                g.lattice.gram,
                rep.failures
            );
        }
    }
    for g in [&a2, &a1a1, &two_a2] {
        let rep = remark71_check(g, 3, 4).unwrap();
        assert!(rep.holds(), "{:?}", rep.failures);
    }
    assert!(lemma73_check(&a2, 3, 5, 4).is_err());
}

#[test]
fn twisted_forms_agree_by_product_and_by_sum() {
    let field = FieldDef::quadratic(int(-1));
    let i = NumberFieldElem::generator(&field);
    let two_a2 = lattice(vec![vec![4, 2], vec![2, 4]]);
    let a2 = global_data(&catalog("A2").unwrap()).unwrap();
    let m_max = 60u64;
    for g in [&a2, &two_a2] {
        let p = g.s1[0];
        // Multiplicative sequence with complex values at powers of p.
        let c: Vec<NumberFieldElem> = (0..=m_max)
            .map(|m| {
                if m == 0 {
                    return NumberFieldElem::constant(int(0));
                }
                let mut rest = m;
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                let outer = NumberFieldElem::constant(int(((rest * rest) % 13) as i64 - 6));
                let inner = (i.clone() + NumberFieldElem::constant(int(2))).pow_u(e);
                let outer = if rest == 1 {
                    NumberFieldElem::constant(int(1))
                } else {
                    outer
                };
                inner * outer
            })
            .collect();
        for d in [1u64, 2] {
            if g.d_s % d as i64 != 0 {
                continue;
            }
            for k in [1i64, 3] {
                let prod = f_sim_coeffs(g, k, d, &c, NumberFieldElem::conj, m_max).unwrap();
                let sum = f_sim_by_sum(g, k, d, &c, NumberFieldElem::conj, m_max).unwrap();
                assert_eq!(prod, sum, "d={d} k={k}");
                let star = f_star_coeffs(g, k, d, &prod).unwrap();
                assert!(!star.is_empty());
            }
        }
    }
}

#[test]
fn twisted_form_vanishes_when_f_equals_its_twist() {
    let field = FieldDef::quadratic(int(-1));
    let i = NumberFieldElem::generator(&field);
    for gram in [
        vec![vec![2, 1], vec![1, 2]],
        vec![vec![2, 1], vec![1, 4]],
        vec![vec![4, 2], vec![2, 4]],
    ] {
        let g = lattice(gram);
        let p = g.s1[0];
        let m_max = 60u64;
        // c(m) = a(m_p) b(m'), with b supported where χ̲_{S,p} = 1 and
        // conj(a(p^e)) χ̲_{S,p}(p^e) = a(p^e); then f_P = f for P = {p}.
        let c: Vec<NumberFieldElem> = (0..=m_max)
            .map(|m| {
                if m == 0 {
                    return NumberFieldElem::constant(int(0));
                }
                let mut rest = m;
                let mut e = 0i32;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                let b = if rest == 1 {
                    int(1)
                } else if g.chi_low_s_p(p, &int(rest as i64)).unwrap() == 1 {
                    int(((rest * 7) % 11) as i64 + 1)
                } else {
                    int(0)
                };
                let chi = g.chi_low_s_p(p, &int(p.pow(e as u32) as i64)).unwrap();
                let a = if chi == 1 {
                    NumberFieldElem::constant(int(2).pow(e))
                } else {
                    i.scale(&int(3).pow(e))
                };
                a.scale(&b)
            })
            .collect();
        assert_eq!(
            f_p_coeffs(&g, &c, NumberFieldElem::conj, &[p], m_max).unwrap(),
            c
        );
        for k in [1i64, 3, 5] {
            let sim = f_sim_coeffs(&g, k, 1, &c, NumberFieldElem::conj, m_max).unwrap();
            let sign = g.local(p).eta_p_half * g.chi_s_p(p, sign_pow(k) * g.d_s).unwrap();
            let scale = int(i64::from(1 + sign));
            let want: Vec<NumberFieldElem> = c.iter().map(|v| v.scale(&scale)).collect();
            assert_eq!(sim, want, "k={k}");
        }
    }
}

#[test]
fn content_of_maass_vectors() {
    let a1 = global_data(&catalog("A1").unwrap()).unwrap();
    assert_eq!(
        epsilon_eta(&a1, &MaassEta::new(2, vec![int(1)], 4)).unwrap(),
        2
    );
    assert_eq!(
        epsilon_eta(&a1, &MaassEta::new(1, vec![rat(1, 2)], 1)).unwrap(),
        1
    );
    assert_eq!(
        epsilon_eta(&a1, &MaassEta::new(3, vec![rat(3, 2)], 6)).unwrap(),
        3
    );
    assert!(epsilon_eta(&a1, &MaassEta::new(0, vec![int(0)], 0)).is_err());
    assert!(epsilon_eta(&a1, &MaassEta::new(1, vec![rat(1, 3)], 1)).is_err());
    let eta = MaassEta::new(2, vec![int(1)], 4);
    assert_eq!(eta.norm(&a1), int(14));
    assert_eq!(eta.d_eta(&a1).unwrap(), 28);
    assert!(eta.is_positive(&a1));
    assert!(MaassEta::new(1, vec![int(1)], 1).is_isotropic(&a1));
}

#[test]
fn maass_lift_of_weight_nine_form() {
    let input = weight_nine_input();
    let (m, _) = lift_assemble(&LiftInput::Odd(input.clone()), 6).unwrap();
    let g = &input.g;
    // ε = 2, D_η = 28: c(28) + 2^9 c(7).
    let eta = MaassEta::new(2, vec![int(1)], 4);
    let direct = g.coeff(28) + int(512) * g.coeff(7);
    let mut wide = m.clone();
    wide.c.insert(28, g.coeff(28).clone());
    assert_eq!(maass_lift(&wide, &eta).unwrap(), direct);
    assert!(maass_lift(&m, &MaassEta::new(1, vec![int(1)], 1)).is_err());

    let table = maass_table(&m, 2).unwrap();
    assert!(table
        .iter()
        .any(|(eta, _)| epsilon_eta(&m.global, eta).unwrap() > 1));
    for (eta, v) in &table {
        assert_eq!(&maass_display_odd(&input, eta).unwrap(), v, "{eta:?}");
    }
}

#[test]
fn unimodular_lift_of_eisenstein_data() {
    let e8 = global_data(&catalog("E8").unwrap()).unwrap();
    for k in [4u32, 6] {
        let f = eisenstein_eigendata(k, 80);
        let input = LiftInputEven::new(e8.clone(), i64::from(k), 1, f, true).unwrap();
        for n in 1..=80u64 {
            let want = Rational::from_integer(sigma(k - 1, n));
            assert_eq!(c_phi_even(n, &input).unwrap(), want, "k={k} N={n}");
            assert_eq!(eisenstein_a(&e8, i64::from(k) + 4, n).unwrap(), want);
        }
        let (m, t) = lift_assemble(&LiftInput::Even(input.clone()), 3).unwrap();
        assert!(jm_membership(&t));
        for (eta, v) in maass_table(&m, 1).unwrap() {
            assert_eq!(maass_display_even(&input, &eta).unwrap(), v, "{eta:?}");
        }
    }
}

#[test]
fn ramified_lift_of_eisenstein_data() {
    let a2 = global_data(&catalog("A2").unwrap()).unwrap();
    for k in [3i64, 5, 7] {
        let satake = |p: u64| {
            let alpha = HalfPowerNumber::half_pow(p, k - 1);
            let inv = alpha.inv().unwrap();
            let xi = a2.local(p).xi_p.unwrap();
            Ok(if p == 3 {
                SatakeParam::Single {
                    alpha,
                    alpha_inv: inv,
                }
            } else {
                SatakeParam::Pair {
                    trace: alpha + inv.scale(&int(i64::from(xi))),
                    c: xi,
                }
            })
        };
        for n in 1..=60u64 {
            let v = c_phi_even_with(&a2, k, n, satake).unwrap();
            assert_eq!(
                v.to_rational(),
                Some(eisenstein_a(&a2, k + 1, n).unwrap()),
                "k={k} N={n}"
            );
        }
    }
}

proptest! {
    #[test]
    fn pair_and_single_evaluations_agree(num in 1i64..40, den in 1i64..40, neg in any::<bool>(),
                                         e in 0i64..7, eps in prop::sample::select(vec![1i32, -1])) {
        let a = rat(if neg { -num } else { num }, den);
        let alpha = HalfPowerNumber::from_rational(a.clone());
        let inv = HalfPowerNumber::from_rational(Rational::one() / a);
        let trace = alpha.clone() + inv.scale(&int(i64::from(eps)));
        let poly = l_poly(e, eps);
        let by_pair = satake_eval(&poly, &SatakeParam::Pair { trace, c: eps }, Clone::clone).unwrap();
        let by_single = satake_eval(&poly, &SatakeParam::Single { alpha, alpha_inv: inv }, Clone::clone).unwrap();
        prop_assert_eq!(by_pair, by_single);
    }

    #[test]
    fn twisted_sum_matches_product_for_multiplicative_data(
        at_p in prop::collection::vec(-9i64..10, 4),
        outside in prop::collection::vec(-9i64..10, 41),
        k in prop::sample::select(vec![1i64, 3, 5]),
    ) {
        let g = lattice(vec![vec![2, 1], vec![1, 8]]);
        let m_max = 40u64;
        let c: Vec<Rational> = (0..=m_max)
            .map(|m| {
                if m == 0 {
                    return int(0);
                }
                let mut rest = m;
                let mut parts = int(1);
                for &p in &g.s1 {
                    let mut e = 0usize;
                    while rest % p == 0 {
                        rest /= p;
                        e += 1;
                    }
                    let v = if e == 0 { int(1) } else { int(at_p[(e - 1).min(3)] + p as i64 * e as i64) };
                    parts *= v;
                }
                let out = if rest == 1 { int(1) } else { int(outside[rest as usize]) };
                parts * out
            })
            .collect();
        let prod = f_sim_coeffs(&g, k, 1, &c, Clone::clone, m_max).unwrap();
        let sum = f_sim_by_sum(&g, k, 1, &c, Clone::clone, m_max).unwrap();
        prop_assert_eq!(prod, sum);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// With `c ≡ 1` the lift at `d η₀`, `η₀` primitive, is `σ_{κ-1}(d)`.
    #[test]
    fn constant_coefficients_lift_to_divisor_sums(
        name in prop::sample::select(vec!["A1", "A2", "A1A1", "D4", "E8"]),
        kappa in prop::sample::select(vec![4i64, 6, 8]),
        coords in prop::collection::vec(-2i64..=2, 8),
        rep in 0usize..16,
        extra in 1i64..4,
        d in 1i64..=12,
    ) {
        let g = global_data(&catalog(name).unwrap()).unwrap();
        let reps = disc_group(&g.lattice).reps;
        let alpha: Vec<Rational> = reps[rep % reps.len()]
            .iter()
            .zip(&coords)
            .map(|(r, &x)| r + int(x))
            .collect();
        let half = g.lattice.norm(&alpha) / int(2);
        let x_f = half.ceil().to_integer().try_into().unwrap_or(0i64).max(0) + extra;
        let eta0 = MaassEta::new(1, alpha, x_f);
        prop_assert_eq!(epsilon_eta(&g, &eta0).unwrap(), 1);
        let eta = MaassEta::new(
            d,
            eta0.alpha.iter().map(|a| a * int(d)).collect(),
            d * x_f,
        );
        let top = eta.d_eta(&g).unwrap() * g.delta_s.unwrap_or(1);
        let c: BTreeMap<i64, Rational> = (0..=top).map(|key| (key, Rational::one())).collect();
        let m = JacobiMCoeffs::new(g, kappa, c, JacobiKind::Eisenstein).unwrap();
        let want = Rational::from_integer(sigma((kappa - 1) as u32, d as u64));
        prop_assert_eq!(maass_lift(&m, &eta).unwrap(), want);
    }
}
