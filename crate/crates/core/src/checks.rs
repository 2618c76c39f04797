//! The consistency checks that certify an installation: each returns a
//! [`CheckReport`] with the number of compared instances and the first
//! counterexamples, rendered as exact strings.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{int, rat, rat_string, sigma, QSeries, Rational};
use crate::error::Result;
use crate::halfint::{cohen_h, halfint_basis, hecke_eigenvalue, hecke_halfint, plus_project};
use crate::jacobi::{disc_index, eisenstein_a, jm_membership, prop12_check};
use crate::lattice::{
    a_s_count_direct, a_s_count_local, catalog, disc_group, extended_gram, forced_k_parity,
    global_data, is_maximal, EvenLattice, GlobalData, CATALOG,
};
use crate::lifting::{
    c_phi_odd, lemma54_check, lemma73_check, level_one_input, lift_assemble, lift_table_at,
    remark71_check, sk_consistency, EigenData, IdentityReport, LiftInput, LiftInputEven,
    LiftInputOdd,
};
use crate::local_factors::{f_tilde, fp_closed_maximal, prop92_rhs};
use crate::siegel::{extract_f, siegel_eis_arith, HalfIntegralMatrix, SiegelOracle};

/// Counterexamples kept per report.
const MAX_FAILURES: usize = 20;

/// Outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    /// Wall-clock time, kept out of the serialized report so that output
    /// is reproducible.
    #[serde(skip)]
    pub runtime_ms: u128,
}

struct Recorder {
    name: String,
    cases: usize,
    failure_count: usize,
    failures: Vec<String>,
    start: Instant,
}

impl Recorder {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn equal<T: PartialEq>(&mut self, lhs: &T, rhs: &T, what: impl FnOnce() -> String) {
        self.check(lhs == rhs, what);
    }

    fn fail(&mut self, what: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(what);
        }
    }

    fn absorb(&mut self, rep: &IdentityReport) {
        self.cases += rep.cases;
        if rep.cases == 0 {
            self.fail(format!("{}: no instances compared", rep.name));
        }
        for f in &rep.failures {
            self.fail(format!("{}: {f}", rep.name));
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            passed: self.failure_count == 0 && self.cases > 0,
            name: self.name,
            cases: self.cases,
            failure_count: self.failure_count,
            failures: self.failures,
            runtime_ms: self.start.elapsed().as_millis(),
        }
    }
}

fn catalog_all() -> Result<Vec<EvenLattice>> {
    CATALOG.iter().map(|n| catalog(n)).collect()
}

/// The lattices `(2), A₁⊕A₁, A₂, D₄` used by the Siegel series checks.
pub fn siegel_lattices() -> Result<Vec<EvenLattice>> {
    ["A1", "A1A1", "A2", "D4"]
        .iter()
        .map(|n| catalog(n))
        .collect()
}

/// Direct count `a_S(ℓ)` over the discriminant group against the product
/// of local counts, for every `0 ≤ ℓ < D_S`.
pub fn counting(lattices: Option<&[EvenLattice]>) -> Result<CheckReport> {
    let owned;
    let lattices = match lattices {
        Some(l) => l,
        None => {
            owned = catalog_all()?;
            &owned
        }
    };
    let mut rec = Recorder::new("counting");
    for s in lattices {
        let g = global_data(s)?;
        let dg = disc_group(s);
        let k = forced_k_parity(s.rank());
        for ell in 0..g.big_d_s {
            let direct = a_s_count_direct(&g, &dg, ell) as i64;
            let local = a_s_count_local(&g, ell, k);
            rec.equal(&direct, &local, || {
                format!("gram {:?} ℓ={ell}: direct {direct}, local {local}", s.gram)
            });
        }
    }
    Ok(rec.finish())
}

/// The Siegel series `f_p(S/2; X)` from the oracle against the closed form
/// for maximal lattices.
pub fn siegel_closed_form(lattices: &[EvenLattice], primes: &[u64]) -> Result<CheckReport> {
    let mut rec = Recorder::new("siegel-closed-form");
    let mut oracle = SiegelOracle::new();
    for s in lattices {
        let g = global_data(s)?;
        let h = HalfIntegralMatrix::half_of(s);
        for &p in primes {
            let got = oracle.f_p(&h, p)?;
            let want = fp_closed_maximal(&g, p);
            rec.equal(&got, &want, || {
                format!(
                    "gram {:?} p={p}: oracle {got:?}, closed form {want:?}",
                    s.gram
                )
            });
        }
    }
    Ok(rec.finish())
}

/// `F̃_p(S_{a,α}/2; X)` from the oracle against the local polynomial in
/// `D_{a,α}` (even `n`) or `det S_{a,α}` (odd `n`), for `a ≤ a_max`.
pub fn normalized_siegel_series(
    lattices: &[EvenLattice],
    primes: &[u64],
    a_max: i64,
) -> Result<CheckReport> {
    let mut rec = Recorder::new("normalized-siegel-series");
    let mut oracle = SiegelOracle::new();
    for s in lattices {
        let g = global_data(s)?;
        let k = forced_k_parity(s.rank());
        for mu in &disc_group(s).reps {
            let half = s.norm(mu) / int(2);
            for a in 1..=a_max {
                if int(a) <= half {
                    continue;
                }
                let ext = extended_gram(s, a, mu)?;
                let h = HalfIntegralMatrix::half_of(&ext);
                let arg = if g.is_odd() {
                    int(ext.det())
                } else {
                    int(g.big_d_s) * (int(a) - &half)
                };
                for &p in primes {
                    let fp = oracle.f_p(&h, p)?;
                    let big_f = extract_f(&h, p, &fp)?;
                    let got = f_tilde(h.size(), &int(h.det2h()), &big_f, p)?;
                    let want = prop92_rhs(&g, p, &arg, k)?;
                    rec.equal(&got, &want, || {
                        format!("gram {:?} a={a} α={mu:?} p={p}: {got:?} ≠ {want:?}", s.gram)
                    });
                }
            }
        }
    }
    Ok(rec.finish())
}

/// Eisenstein coefficients `A(N)` of `S = (2)` against Cohen's `H(κ-1, N)`.
pub fn eisenstein_vs_cohen(kappas: &[i64], n_max: u64) -> Result<CheckReport> {
    let mut rec = Recorder::new("eisenstein-vs-cohen");
    let g = global_data(&catalog("A1")?)?;
    for &kappa in kappas {
        for n in 1..=n_max {
            let a = eisenstein_a(&g, kappa, n)?;
            let h = cohen_h(kappa - 1, n)?;
            rec.equal(&a, &h, || {
                format!(
                    "κ={kappa} N={n}: A = {}, H = {}",
                    rat_string(&a),
                    rat_string(&h)
                )
            });
        }
    }
    Ok(rec.finish())
}

/// Eisenstein coefficients of `E₈` against `σ_{k-1}(N)`, `κ = k + 4`.
pub fn unimodular_divisor_sums(kappas: &[i64], n_max: u64) -> Result<CheckReport> {
    let mut rec = Recorder::new("unimodular-divisor-sums");
    let g = global_data(&catalog("E8")?)?;
    for &kappa in kappas {
        let k = u32::try_from(kappa - 4)
            .map_err(|_| crate::JflError::InvalidInput(format!("κ = {kappa} must exceed 4")))?;
        for n in 1..=n_max {
            let a = eisenstein_a(&g, kappa, n)?;
            let want = Rational::from_integer(sigma(k - 1, n));
            rec.equal(&a, &want, || {
                format!(
                    "κ={kappa} N={n}: A = {}, σ = {}",
                    rat_string(&a),
                    rat_string(&want)
                )
            });
        }
    }
    Ok(rec.finish())
}

/// `c_Φ(N) = c_g(N)` for the lift of the level-one form of weight `2k`,
/// `S = (2)`, for every `N ≤ prec`; unrepresentable `N` must give zero.
pub fn lift_reproduces_g(input: &LiftInputOdd) -> Result<CheckReport> {
    let mut rec = Recorder::new("lift-reproduces-g");
    for n in 1..=input.g.nmax() as u64 {
        let c = c_phi_odd(n, input)?;
        let want = if matches!(n % 4, 0 | 3) {
            input.g.coeff(n as usize).clone()
        } else {
            Rational::zero()
        };
        rec.equal(&c, &want, || {
            format!(
                "N={n}: c_Φ = {}, c_g = {}",
                rat_string(&c),
                rat_string(&want)
            )
        });
    }
    Ok(rec.finish())
}

/// Degree-two Ikeda coefficients against the lift table, `a ≤ a_max`.
pub fn ikeda_consistency(input: &LiftInputOdd, a_max: i64) -> Result<CheckReport> {
    let mut rec = Recorder::new("ikeda-consistency");
    let mut oracle = SiegelOracle::new();
    let rep = sk_consistency(input, &input.f, a_max, &mut oracle)?;
    for row in &rep.rows {
        rec.equal(&row.ikeda, &row.lift, || {
            format!(
                "a={} α={}/2: Ikeda {} ≠ lift {}",
                row.a, row.r, row.ikeda, row.lift
            )
        });
    }
    Ok(rec.finish())
}

/// The Dirichlet-series identity on the lift at `(a, α) = (1, 1/2)` with
/// the Euler factors of `L(Φ, s)`, for `m ≤ m_max`.
pub fn lift_dirichlet_identity(input: &LiftInputOdd, m_max: u64) -> Result<CheckReport> {
    let mut rec = Recorder::new("lift-dirichlet-identity");
    let lift = LiftInput::Odd(input.clone());
    let points: Vec<(i64, Vec<Rational>)> = (1..=m_max as i64)
        .map(|m| (m * m, vec![rat(m, 2)]))
        .collect();
    let t = lift_table_at(&lift, &points)?;
    let l = lift.l_params(m_max)?;
    let rep = prop12_check(&t, lift.kappa(), &l, 1, &[rat(1, 2)], m_max)?;
    for m in 1..=m_max as usize {
        let (lhs, rhs) = (&rep.lhs[m], &rep.rhs[m]);
        rec.equal(lhs, rhs, || format!("m={m}: {lhs} ≠ {rhs}"));
    }
    Ok(rec.finish())
}

/// Odd-rank lattices with `𝔖₁ = {3}` and with nonempty `𝔖₂`.
fn odd_identity_lattices() -> Result<(Vec<EvenLattice>, Vec<EvenLattice>)> {
    let s1 = vec![
        EvenLattice::new(vec![vec![6]])?,
        EvenLattice::new(vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 2]])?,
    ];
    let s2 = vec![
        EvenLattice::new(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]])?,
        EvenLattice::new(vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 6]])?,
    ];
    Ok((s1, s2))
}

/// Even-rank lattices covering `𝔖₀, 𝔖₁, 𝔖₂`: `A₂, A₁⊕A₁, D₄` and `2A₂`.
fn even_identity_lattices() -> Result<Vec<EvenLattice>> {
    Ok(vec![
        catalog("A2")?,
        catalog("A1A1")?,
        catalog("D4")?,
        EvenLattice::new(vec![vec![4, 2], vec![2, 4]])?,
    ])
}

/// Smallest admissible `k` with `κ` even.
fn first_k(g: &GlobalData) -> i64 {
    let base = g.n.div_ceil(2) as i64;
    if base % 2 == 0 {
        2
    } else {
        1
    }
}

/// The odd-rank local identities (2)–(5) on the symbolic models, `𝔣 ≤ f_max`.
pub fn odd_local_identities(f_max: i64) -> Result<CheckReport> {
    let mut rec = Recorder::new("odd-local-identities");
    let (s1, s2) = odd_identity_lattices()?;
    for (lattices, parts) in [(&s1, [2u8, 4]), (&s2, [3, 5])] {
        for s in lattices {
            let g = global_data(s)?;
            let k0 = first_k(&g);
            for k in [k0, k0 + 2] {
                for part in parts {
                    rec.absorb(&lemma54_check(&g, k, part, f_max)?);
                }
            }
        }
    }
    Ok(rec.finish())
}

/// The even-rank local identities (1)–(4) and the sign relation for the
/// extended lattices, `m ≤ m_max`.
pub fn even_local_identities(m_max: i64) -> Result<CheckReport> {
    let mut rec = Recorder::new("even-local-identities");
    for s in even_identity_lattices()? {
        let g = global_data(&s)?;
        let k0 = first_k(&g);
        for k in [k0, k0 + 2] {
            for part in 1..=4u8 {
                let rep = lemma73_check(&g, k, part, m_max)?;
                // Parts without primes in the relevant class are vacuous here.
                if rep.cases > 0 {
                    rec.absorb(&rep);
                }
            }
            if !g.s1.is_empty() {
                rec.absorb(&remark71_check(&g, k, 4)?);
            }
        }
    }
    for part in 1..=4u8 {
        let covered = even_identity_lattices()?.iter().any(|s| {
            let g = global_data(s).expect("valid lattice");
            lemma73_check(&g, first_k(&g), part, m_max).is_ok_and(|r| r.cases > 0)
        });
        rec.check(covered, || format!("part {part} has no instance"));
    }
    Ok(rec.finish())
}

/// Both families of local identities.
pub fn local_identities(f_max: i64) -> Result<CheckReport> {
    let mut rec = Recorder::new("local-identities");
    let odd = odd_local_identities(f_max)?;
    let even = even_local_identities(f_max)?;
    for rep in [odd, even] {
        rec.cases += rep.cases;
        rec.failure_count += rep.failure_count;
        rec.failures.extend(rep.failures);
    }
    rec.failures.truncate(MAX_FAILURES);
    Ok(rec.finish())
}

/// Normalized level-one Eisenstein series of weight `w` as eigen data.
fn eisenstein_eigendata(w: u32, prec: usize) -> Result<EigenData> {
    let e = crate::halfint::eisenstein_level_one(w, prec);
    let lead = e.coeff(1).clone();
    EigenData::from_series(
        i64::from(w),
        1,
        &e.scale(&(Rational::from_integer(1.into()) / lead)),
        std::collections::BTreeMap::new(),
    )
}

/// Structural invariants: the relation between `D_S`, `δ_S`, `d_S` and
/// `det S`, maximality of the catalog, `Δ = δ_S D` on all indices,
/// membership in `J^M` and rationality of assembled lifts, idempotence of
/// `℘_k` on basis and random series, and the Shimura relation for `g`.
pub fn structural(input: &LiftInputOdd, seed: u64) -> Result<CheckReport> {
    let mut rec = Recorder::new("structural");
    for s in catalog_all()? {
        let g = global_data(&s)?;
        rec.check(is_maximal(&s), || {
            format!("gram {:?} is not maximal", s.gram)
        });
        let rel = if g.is_odd() {
            g.big_d_s * g.delta_s.unwrap_or(0) == 2 * s.det()
        } else {
            g.big_d_s * g.d_s == s.det()
        };
        rec.check(rel, || {
            format!("gram {:?} violates the determinant relation", s.gram)
        });
        if g.is_odd() {
            let delta = g.delta_s.unwrap_or(0);
            for mu in &disc_group(&s).reps {
                for a in 1..=6 {
                    let idx = disc_index(&g, a, mu)?;
                    rec.equal(&idx.delta, &(delta * idx.d), || {
                        format!("gram {:?} a={a} α={mu:?}: Δ ≠ δ_S D", s.gram)
                    });
                }
            }
        }
    }

    // Lifts: every coefficient is rational (c_Φ fails otherwise) and the
    // assembled tables lie in J^M.
    let (m, t) = lift_assemble(&LiftInput::Odd(input.clone()), 8)?;
    rec.check(jm_membership(&t), || "odd lift table is not in J^M".into());
    rec.check(!m.c.is_empty(), || "odd lift has no coefficients".into());
    for n in 1..=input.g.nmax() as u64 {
        let ok = c_phi_odd(n, input).is_ok();
        rec.check(ok, || format!("c_Φ({n}) is not rational"));
    }
    let e8 = global_data(&catalog("E8")?)?;
    for w in [4u32, 6] {
        let f = eisenstein_eigendata(w, 60)?;
        let even = LiftInputEven::new(e8.clone(), i64::from(w), 1, f, true)?;
        let (_, t) = lift_assemble(&LiftInput::Even(even), 3)?;
        rec.check(jm_membership(&t), || {
            format!("E8 lift of weight {w} is not in J^M")
        });
    }

    // ℘_k is idempotent.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 1..=8i64 {
        let mut series: Vec<QSeries> = halfint_basis(k, 80);
        for _ in 0..4 {
            let coeffs = (0..=80).map(|_| int(rng.gen_range(-50..=50))).collect();
            series.push(QSeries::from_coeffs(1, coeffs));
        }
        for s in series {
            let once = plus_project(&s, k);
            rec.equal(&plus_project(&once, k), &once, || {
                format!("℘_{k} is not idempotent")
            });
        }
    }

    // The Shimura correspondence: T(p²) g = c_f(p) g.
    for p in [2u64, 3, 5] {
        let cf = input.f.coeff(p)?.clone();
        let ev = hecke_eigenvalue(p, &input.g, input.k);
        rec.equal(&ev, &Some(cf.clone()), || {
            format!(
                "p={p}: T(p²) eigenvalue {ev:?} ≠ c_f(p) = {}",
                rat_string(&cf)
            )
        });
        let t = hecke_halfint(p, &input.g, input.k);
        for j in 0..=t.nmax() {
            rec.equal(t.coeff(j), &(&cf * input.g.coeff(j)), || {
                format!("p={p}: (T(p²) g)({j}) ≠ c_f(p) c_g({j})")
            });
        }
    }
    Ok(rec.finish())
}

/// `c_{E_κ}(S_{a,α}/2) / A(D_{a,α})` is the same for all `(a, α)` with
/// `a ≤ a_max` and `A ≠ 0`, for `S = (2)`.
pub fn siegel_eisenstein_ratio(kappa: i64, a_max: i64) -> Result<CheckReport> {
    let mut rec = Recorder::new("siegel-eisenstein-ratio");
    let g = global_data(&catalog("A1")?)?;
    let mut oracle = SiegelOracle::new();
    let mut first: Option<Rational> = None;
    for a in 1..=a_max {
        for r in 0..=a {
            if r * r >= 4 * a {
                continue;
            }
            let d = disc_index(&g, a, &[rat(r, 2)])?.d;
            let big_a = eisenstein_a(&g, kappa, d as u64)?;
            if big_a.is_zero() {
                continue;
            }
            let h = HalfIntegralMatrix::from_twice(vec![vec![2, r], vec![r, 2 * a]])?;
            let q = siegel_eis_arith(&h, kappa, &mut oracle)? / big_a;
            let r0 = first.get_or_insert_with(|| q.clone()).clone();
            rec.equal(&q, &r0, || {
                format!(
                    "a={a} α={r}/2: ratio {} ≠ {}",
                    rat_string(&q),
                    rat_string(&r0)
                )
            });
        }
    }
    Ok(rec.finish())
}

/// The default lift input: `S = (2)`, `k = 9`, precision 400.
pub fn default_lift_input() -> Result<LiftInputOdd> {
    level_one_input(9, 400)
}

/// Names of the checks in acceptance order.
pub const CHECK_NAMES: [&str; 11] = [
    "counting",
    "siegel-closed-form",
    "normalized-siegel-series",
    "eisenstein-vs-cohen",
    "unimodular-divisor-sums",
    "lift-reproduces-g",
    "ikeda-consistency",
    "lift-dirichlet-identity",
    "local-identities",
    "structural",
    "siegel-eisenstein-ratio",
];

/// Runs a check by name with its acceptance parameters; the lift-based
/// checks read `input`, which the others ignore.
pub fn run_named(name: &str, input: Option<&LiftInputOdd>, seed: u64) -> Result<CheckReport> {
    let lift = || {
        input.ok_or_else(|| {
            crate::JflError::InvalidInput(format!("check {name:?} needs the lift input"))
        })
    };
    match name {
        "counting" => counting(None),
        "siegel-closed-form" => siegel_closed_form(&siegel_lattices()?, &[2, 3]),
        "normalized-siegel-series" => normalized_siegel_series(&siegel_lattices()?, &[2, 3], 6),
        "eisenstein-vs-cohen" => eisenstein_vs_cohen(&[4, 6], 500),
        "unimodular-divisor-sums" => unimodular_divisor_sums(&[6, 8, 10], 200),
        "lift-reproduces-g" => lift_reproduces_g(lift()?),
        "ikeda-consistency" => ikeda_consistency(lift()?, 6),
        "lift-dirichlet-identity" => lift_dirichlet_identity(lift()?, 20),
        "local-identities" => local_identities(4),
        "structural" => structural(lift()?, seed),
        "siegel-eisenstein-ratio" => siegel_eisenstein_ratio(4, 4),
        other => Err(crate::JflError::InvalidInput(format!(
            "unknown check {other:?}; expected one of {CHECK_NAMES:?}"
        ))),
    }
}

/// Whether the named check reads the lift input.
#[must_use]
pub fn needs_lift_input(name: &str) -> bool {
    matches!(
        name,
        "lift-reproduces-g" | "ikeda-consistency" | "lift-dirichlet-identity" | "structural"
    )
}
