//! Siegel series: the enumeration and reduction routes against each other,
//! against the closed form for maximal lattices, and against the local
//! polynomials of the extended lattices.

use jfl_core::arith::{int, ord_p, Rational};
use jfl_core::lattice::{catalog, disc_group, extended_gram, forced_k_parity, global_data};
use jfl_core::local_factors::{f_tilde, fp_closed_maximal, prop92_rhs};
use jfl_core::siegel::{extract_f, nu, siegel_series_naive, HalfIntegralMatrix, SiegelOracle};
use proptest::prelude::*;

fn h2(a: i64, b: i64, c: i64) -> HalfIntegralMatrix {
    HalfIntegralMatrix::from_twice(vec![vec![2 * a, b], vec![b, 2 * c]]).unwrap()
}

#[test]
fn enumeration_and_reduction_agree() {
    let mut oracle = SiegelOracle::new();
    let mut compared = 0;
    for p in [2u64, 3] {
        for a in 1..=16i64 {
            let h = HalfIntegralMatrix::from_twice(vec![vec![2 * a]]).unwrap();
            assert_eq!(
                siegel_series_naive(&h, p, None).unwrap(),
                oracle.f_p(&h, p).unwrap(),
                "p={p} a={a}"
            );
            compared += 1;
        }
        for a in 1..=4i64 {
            for c in a..=6i64 {
                for b in 0..=a {
                    if 4 * a * c - b * b <= 0 {
                        continue;
                    }
                    let h = h2(a, b, c);
                    // Depth K = ord_p det(2h) + 4; keep p^{3K} small.
                    let depth = ord_p(h.det2h(), p) + 4;
                    if p.pow(3 * depth) > 1 << 22 {
                        continue;
                    }
                    let naive = siegel_series_naive(&h, p, None).unwrap();
                    assert_eq!(naive, oracle.f_p(&h, p).unwrap(), "p={p} h=({a},{b},{c})");
                    compared += 1;
                }
            }
        }
    }
    assert!(
        compared >= 60,
        "only {compared} comparisons within the enumeration bound"
    );
}

#[test]
fn closed_form_for_maximal_lattices() {
    let mut oracle = SiegelOracle::new();
    for name in ["A1", "A1A1", "A2", "D4"] {
        let s = catalog(name).unwrap();
        let g = global_data(&s).unwrap();
        let h = HalfIntegralMatrix::half_of(&s);
        for p in [2u64, 3] {
            assert_eq!(
                oracle.f_p(&h, p).unwrap(),
                fp_closed_maximal(&g, p),
                "{name} p={p}"
            );
        }
    }
}

#[test]
fn normalized_series_of_extended_lattices() {
    let mut oracle = SiegelOracle::new();
    for name in ["A1", "A1A1", "A2", "D4"] {
        let s = catalog(name).unwrap();
        let g = global_data(&s).unwrap();
        let k = forced_k_parity(s.rank());
        for mu in &disc_group(&s).reps {
            let half = s.norm(mu) / int(2);
            for a in 1..=6i64 {
                if int(a) <= half {
                    continue;
                }
                let ext = extended_gram(&s, a, mu).unwrap();
                let h = HalfIntegralMatrix::half_of(&ext);
                let arg: Rational = if g.is_odd() {
                    int(ext.det())
                } else {
                    int(g.big_d_s) * (int(a) - &half)
                };
                for p in [2u64, 3] {
                    let fp = oracle.f_p(&h, p).unwrap();
                    let big_f = extract_f(&h, p, &fp).unwrap();
                    let got = f_tilde(h.size(), &int(h.det2h()), &big_f, p).unwrap();
                    let want = prop92_rhs(&g, p, &arg, k).unwrap();
                    assert_eq!(got, want, "{name} a={a} μ={mu:?} p={p}");
                }
            }
        }
    }
}

fn sym(entries: &[i64; 6], den: i64) -> Vec<Vec<Rational>> {
    let r = |x: i64| Rational::new(x.into(), den.into());
    vec![
        vec![r(entries[0]), r(entries[1]), r(entries[2])],
        vec![r(entries[1]), r(entries[3]), r(entries[4])],
        vec![r(entries[2]), r(entries[4]), r(entries[5])],
    ]
}

fn congruence(a: &[Vec<Rational>], u: &[[i64; 3]; 3]) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![int(0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out[i][j] += int(u[k][i]) * &a[k][l] * int(u[l][j]);
                }
            }
        }
    }
    out
}

proptest! {
    /// `ν` is invariant under `α ↦ Uᵀ α U` for unimodular `U` and under
    /// integral translation.
    #[test]
    fn nu_is_invariant(e in prop::array::uniform6(-20i64..20), t in prop::array::uniform6(-3i64..3),
                       x in -3i64..3, y in -3i64..3, z in -3i64..3, p in prop::sample::select(vec![2u64, 3, 5])) {
        let den = (p as i64).pow(3);
        let a = sym(&e, den);
        let u = [[1, x, y], [0, 1, z], [0, 0, 1]];
        let ut = [[1, 0, 0], [x, 1, 0], [y, z, 1]];
        let base = nu(&a, p).unwrap();
        prop_assert_eq!(nu(&congruence(&a, &u), p).unwrap(), base);
        prop_assert_eq!(nu(&congruence(&a, &ut), p).unwrap(), base);
        let shift = sym(&t.map(|v| v * den), den);
        let moved: Vec<Vec<Rational>> = a.iter().zip(&shift).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect();
        prop_assert_eq!(nu(&moved, p).unwrap(), base);
    }
}
