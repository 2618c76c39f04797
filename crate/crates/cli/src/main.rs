//! `jfl`: batch front end for lattice invariants, local polynomials, Siegel
//! series, half-integral weight forms, Jacobi Eisenstein coefficients, lifts
//! and the consistency checks.
//!
//! Exit codes: 0 on success or a passing check, 1 on a failing check or a
//! consistency failure, 2 on invalid input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jfl_core::arith::{parse_rational, rat_string, QSeries, Rational};
use jfl_core::checks::{self, CheckReport, CHECK_NAMES};
use jfl_core::halfint::{cohen_eisenstein, cusp_plus_eigenbasis};
use jfl_core::jacobi::{eisenstein_a, JacobiKind, JacobiMCoeffs};
use jfl_core::lattice::{catalog, forced_k_parity, global_data, EvenLattice, GlobalData};
use jfl_core::lifting::{
    epsilon_eta, level_one_input, lift_assemble, maass_lift, maass_table, EigenData, LiftInput,
    LiftInputEven, LiftInputOdd,
};
use jfl_core::local_factors::{f_tilde, l_s_poly};
use jfl_core::siegel::{extract_f, HalfIntegralMatrix, SiegelOracle};
use jfl_core::JflError;
use serde::Deserialize;
use serde_json::{json, Value};

const DEFAULT_PREC: usize = 200;

#[derive(Parser)]
#[command(
    name = "jfl",
    version,
    about = "Exact computations for Jacobi forms of lattice index"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct LatticeArg {
    /// Built-in lattice: A1, A1A1, A2, D4, E8.
    #[arg(long, conflicts_with = "gram")]
    lattice: Option<String>,
    /// JSON file `{"gram": [[...], ...]}`.
    #[arg(long)]
    gram: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Global and local invariants of a maximal even lattice.
    Lattice {
        #[command(flatten)]
        lat: LatticeArg,
    },
    /// The local polynomial `l_{p,S,a}(X)`.
    Localpoly {
        #[command(flatten)]
        lat: LatticeArg,
        #[arg(long)]
        p: u64,
        /// Rational argument, e.g. `12` or `7/3`.
        #[arg(long)]
        a: String,
        /// Weight parameter; defaults to the parity forced by the rank.
        #[arg(long)]
        k: Option<i64>,
    },
    /// Local Siegel series `f_p(h; X)` and its normalization `F̃_p(h; X)`.
    Siegel {
        #[command(flatten)]
        lat: LatticeArg,
        /// The even matrix `2h` as JSON; otherwise `h = S/2`.
        #[arg(long)]
        twice_h: Option<String>,
        #[arg(long)]
        p: u64,
    },
    /// Coefficients of half-integral weight forms of weight `k + 1/2`.
    Halfint {
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value_t = HalfintKind::Cusp)]
        kind: HalfintKind,
        /// q-precision; defaults to `JFL_PREC` or 200.
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Jacobi Eisenstein coefficients `A(N)` for `1 ≤ N ≤ nmax`.
    Eis {
        #[command(flatten)]
        lat: LatticeArg,
        #[arg(long)]
        kappa: i64,
        #[arg(long)]
        nmax: Option<u64>,
    },
    /// Coefficients `c_Φ(N)` of the lift for `1 ≤ N ≤ nmax`.
    Lift {
        #[command(flatten)]
        input: LiftArgs,
        #[arg(long)]
        nmax: Option<u64>,
        /// Also assemble the table for `a ≤ a_max` and check it lies in `J^M`.
        #[arg(long)]
        a_max: Option<i64>,
    },
    /// Coefficients `c_F(η)` of the Maass lift for `0 ≤ x_e, x_f ≤ bound`.
    Maass {
        #[command(flatten)]
        input: LiftArgs,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Consistency checks; `all` runs every acceptance check in order.
    Check {
        /// `all`, counting, siegel-closed-form, normalized-siegel-series,
        /// eisenstein-vs-cohen, unimodular-divisor-sums, lift-reproduces-g,
        /// ikeda-consistency, lift-dirichlet-identity, local-identities,
        /// odd-local-identities, even-local-identities, structural or
        /// siegel-eisenstein-ratio
        name: String,
        /// Lattice for the counting check.
        #[command(flatten)]
        lat: LatticeArg,
        /// Weight parameter of the level-one lift (`S = (2)`).
        #[arg(long, default_value_t = 9)]
        k: i64,
        /// q-precision of the level-one lift data.
        #[arg(long, default_value_t = 400)]
        prec: usize,
        /// Seed of the randomized samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HalfintKind {
    /// Basis of the plus cusp space of level 4.
    Cusp,
    /// Cohen–Eisenstein series.
    Cohen,
}

#[derive(Args)]
struct LiftArgs {
    #[command(flatten)]
    lat: LatticeArg,
    /// For odd rank the lift has weight `k + 1/2` data; for even rank `f`
    /// has weight `k`.
    #[arg(long, default_value_t = 9)]
    k: i64,
    #[arg(long, default_value_t = 1)]
    b: u64,
    #[arg(long, default_value_t = 1)]
    d: u64,
    /// Eigen data JSON; without it the level-one data for `S = (2)` is
    /// extracted.
    #[arg(long)]
    eigen: Option<PathBuf>,
    /// Asserts that `f` is not a CM form (required for even rank).
    #[arg(long)]
    not_cm: bool,
    #[arg(long)]
    prec: Option<usize>,
}

/// Eigen data file: rational strings throughout.
#[derive(Deserialize)]
struct EigenFile {
    weight: i64,
    level: u64,
    coeffs: Vec<String>,
    #[serde(default)]
    al_signs: BTreeMap<u64, i32>,
    /// `c_g(m)`, odd rank only.
    #[serde(default)]
    g: Vec<String>,
}

/// A result as JSON plus a flat table for CSV.
struct Output {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Output {
    fn table(header: &[&str], rows: Vec<Vec<String>>) -> Self {
        let json = Value::Array(
            rows.iter()
                .map(|r| {
                    Value::Object(
                        header
                            .iter()
                            .zip(r)
                            .map(|(h, v)| ((*h).to_string(), Value::String(v.clone())))
                            .collect(),
                    )
                })
                .collect(),
        );
        Self {
            json,
            header: header.iter().map(|h| (*h).to_string()).collect(),
            rows,
        }
    }
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<JflError> for Failure {
    fn from(e: JflError) -> Self {
        match e {
            JflError::Inconsistent(_) => Self::Check(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn env_prec() -> CliResult<usize> {
    match std::env::var("JFL_PREC") {
        Ok(v) => v
            .parse()
            .map_err(|_| input_err(format!("JFL_PREC must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_PREC),
    }
}

fn load_lattice(arg: &LatticeArg) -> CliResult<EvenLattice> {
    match (&arg.lattice, &arg.gram) {
        (Some(name), _) => Ok(catalog(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| input_err(format!("gram: cannot read {}: {e}", path.display())))?;
            Ok(EvenLattice::from_json(&text)?)
        }
        (None, None) => Err(input_err("one of --lattice or --gram is required")),
    }
}

fn parse_rat(s: &str, field: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|_| input_err(format!("{field}: not a rational number: {s:?}")))
}

fn lattice_cmd(lat: &LatticeArg) -> CliResult<Output> {
    let g = global_data(&load_lattice(lat)?)?;
    let json = serde_json::to_value(&g).expect("serializable");
    let flat = [
        ("n", g.n.to_string()),
        ("det", g.det.to_string()),
        ("s1", format!("{:?}", g.s1)),
        ("s2", format!("{:?}", g.s2)),
        ("d_s", g.d_s.to_string()),
        ("b_s", opt(g.b_s)),
        ("lambda_s", opt(g.lambda_s)),
        ("delta_s", opt(g.delta_s)),
        ("frak_d_s", opt(g.frak_d_s)),
        ("disc_k", opt(g.disc_k)),
        ("big_d_s", g.big_d_s.to_string()),
    ];
    let mut out = Output::table(
        &["invariant", "value"],
        flat.iter()
            .map(|(k, v)| vec![(*k).to_string(), v.clone()])
            .collect(),
    );
    out.json = json;
    Ok(out)
}

fn opt(v: Option<i64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn poly_rows<C: std::fmt::Display + jfl_core::arith::Ring>(
    p: &jfl_core::arith::LaurentPoly<C>,
) -> Vec<Vec<String>> {
    p.terms()
        .iter()
        .map(|(e, c)| vec![e.to_string(), c.to_string()])
        .collect()
}

fn rat_rows(p: &jfl_core::arith::LaurentPoly<Rational>) -> Vec<Vec<String>> {
    p.terms()
        .iter()
        .map(|(e, c)| vec![e.to_string(), rat_string(c)])
        .collect()
}

fn localpoly_cmd(lat: &LatticeArg, p: u64, a: &str, k: Option<i64>) -> CliResult<Output> {
    let s = load_lattice(lat)?;
    let g = global_data(&s)?;
    let k = k.unwrap_or_else(|| forced_k_parity(s.rank()));
    let a = parse_rat(a, "a")?;
    let poly = l_s_poly(&g, p, &a, k)?;
    Ok(Output::table(
        &["exponent", "coefficient"],
        poly_rows(&poly),
    ))
}

fn siegel_cmd(lat: &LatticeArg, twice_h: Option<&str>, p: u64) -> CliResult<Output> {
    let h = match twice_h {
        Some(text) => {
            let m: Vec<Vec<i64>> =
                serde_json::from_str(text).map_err(|e| input_err(format!("twice_h: {e}")))?;
            HalfIntegralMatrix::from_twice(m)?
        }
        None => HalfIntegralMatrix::half_of(&load_lattice(lat)?),
    };
    let mut oracle = SiegelOracle::new();
    let fp = oracle.f_p(&h, p)?;
    let big_f = extract_f(&h, p, &fp)?;
    let ft = f_tilde(
        h.size(),
        &Rational::from_integer(h.det2h().into()),
        &big_f,
        p,
    )?;
    let mut rows: Vec<Vec<String>> = rat_rows(&fp)
        .into_iter()
        .map(|r| [vec!["f_p".to_string()], r].concat())
        .collect();
    rows.extend(
        poly_rows(&ft)
            .into_iter()
            .map(|r| [vec!["f_tilde".to_string()], r].concat()),
    );
    Ok(Output::table(&["series", "exponent", "coefficient"], rows))
}

fn halfint_cmd(k: i64, kind: HalfintKind, prec: Option<usize>) -> CliResult<Output> {
    let prec = prec.map_or_else(env_prec, Ok)?;
    match kind {
        HalfintKind::Cusp => {
            let basis = cusp_plus_eigenbasis(k, prec)?;
            let header: Vec<String> = std::iter::once("m".to_string())
                .chain((1..=basis.len()).map(|i| format!("g{i}")))
                .collect();
            let rows = (0..=prec)
                .map(|m| {
                    std::iter::once(m.to_string())
                        .chain(basis.iter().map(|b| rat_string(b.coeff(m))))
                        .collect()
                })
                .collect();
            let hdr: Vec<&str> = header.iter().map(String::as_str).collect();
            Ok(Output::table(&hdr, rows))
        }
        HalfintKind::Cohen => {
            let c = cohen_eisenstein(k, prec)?;
            let rows = c
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, v)| vec![m.to_string(), rat_string(v)])
                .collect();
            Ok(Output::table(&["m", "h"], rows))
        }
    }
}

fn eis_cmd(lat: &LatticeArg, kappa: i64, nmax: Option<u64>) -> CliResult<Output> {
    let g = global_data(&load_lattice(lat)?)?;
    let nmax = nmax.map_or_else(|| env_prec().map(|p| p as u64), Ok)?;
    let rows = (1..=nmax)
        .map(|n| {
            Ok(vec![
                n.to_string(),
                rat_string(&eisenstein_a(&g, kappa, n)?),
            ])
        })
        .collect::<CliResult<_>>()?;
    Ok(Output::table(&["N", "A"], rows))
}

fn series_from(strings: &[String], field: &str) -> CliResult<Vec<Rational>> {
    strings.iter().map(|s| parse_rat(s, field)).collect()
}

fn lift_input(args: &LiftArgs, need: usize) -> CliResult<LiftInput> {
    let Some(path) = &args.eigen else {
        if args.lat.lattice.is_some() || args.lat.gram.is_some() {
            let g = global_data(&load_lattice(&args.lat)?)?;
            if g.lattice.gram != vec![vec![2]] {
                return Err(input_err("eigen: a lattice other than (2) needs --eigen"));
            }
        }
        let prec = args.prec.unwrap_or(need.max(env_prec()?));
        return Ok(LiftInput::Odd(level_one_input(args.k, prec)?));
    };
    let g: GlobalData = global_data(&load_lattice(&args.lat)?)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("eigen: cannot read {}: {e}", path.display())))?;
    let file: EigenFile =
        serde_json::from_str(&text).map_err(|e| input_err(format!("eigen: {e}")))?;
    let f = EigenData::from_series(
        file.weight,
        file.level,
        &QSeries::from_coeffs(1, series_from(&file.coeffs, "coeffs")?),
        file.al_signs,
    )?;
    if g.is_odd() {
        if file.g.is_empty() {
            return Err(input_err("g: odd rank needs the coefficients of g"));
        }
        let series = QSeries::from_coeffs(1, series_from(&file.g, "g")?);
        Ok(LiftInput::Odd(LiftInputOdd::new(
            g, args.k, args.b, args.d, f, &series,
        )?))
    } else {
        Ok(LiftInput::Even(LiftInputEven::new(
            g,
            args.k,
            args.d,
            f,
            args.not_cm,
        )?))
    }
}

fn lift_cmd(args: &LiftArgs, nmax: Option<u64>, a_max: Option<i64>) -> CliResult<Output> {
    let nmax = nmax.map_or_else(|| env_prec().map(|p| p as u64), Ok)?;
    let input = lift_input(args, nmax as usize)?;
    if let Some(a_max) = a_max {
        lift_assemble(&input, a_max)?;
    }
    let rows = (1..=nmax)
        .map(|n| Ok(vec![n.to_string(), rat_string(&input.coefficient(n)?)]))
        .collect::<CliResult<_>>()?;
    Ok(Output::table(&["N", "c"], rows))
}

fn maass_cmd(args: &LiftArgs, bound: i64) -> CliResult<Output> {
    if !(0..=20).contains(&bound) {
        return Err(input_err("bound: must lie in 0..=20"));
    }
    let lat = if args.lat.lattice.is_none() && args.lat.gram.is_none() {
        catalog("A1")?
    } else {
        load_lattice(&args.lat)?
    };
    let g = global_data(&lat)?;
    // D_η ≤ D_S bound², at key δ_S D_η.
    let top = (g.big_d_s * g.delta_s.unwrap_or(1)) as u64 * (bound * bound) as u64;
    let input = lift_input(args, top as usize)?;
    let mut c = BTreeMap::new();
    for key in 1..=top {
        c.insert(key as i64, input.coefficient(key)?);
    }
    let m = JacobiMCoeffs::new(input.global().clone(), input.kappa(), c, JacobiKind::Cusp)?;
    let rows = maass_table(&m, bound)?
        .into_iter()
        .map(|(eta, v)| {
            debug_assert_eq!(maass_lift(&m, &eta).ok(), Some(v.clone()));
            let eps = epsilon_eta(&m.global, &eta)?;
            Ok(vec![
                eta.x_e.to_string(),
                eta.alpha
                    .iter()
                    .map(rat_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                eta.x_f.to_string(),
                eta.d_eta(&m.global)?.to_string(),
                eps.to_string(),
                rat_string(&v),
            ])
        })
        .collect::<CliResult<_>>()?;
    Ok(Output::table(
        &["x_e", "alpha", "x_f", "d_eta", "epsilon", "c"],
        rows,
    ))
}

/// Runs one check; `counting` also accepts a single lattice.
fn run_check(
    name: &str,
    lat: &LatticeArg,
    input: &dyn Fn() -> CliResult<LiftInputOdd>,
    seed: u64,
) -> CliResult<CheckReport> {
    Ok(match name {
        "counting" if lat.lattice.is_some() || lat.gram.is_some() => {
            checks::counting(Some(&[load_lattice(lat)?]))?
        }
        "odd-local-identities" => checks::odd_local_identities(4)?,
        "even-local-identities" => checks::even_local_identities(4)?,
        _ if checks::needs_lift_input(name) => checks::run_named(name, Some(&input()?), seed)?,
        _ if CHECK_NAMES.contains(&name) => checks::run_named(name, None, seed)?,
        other => {
            return Err(input_err(format!(
                "check: unknown name {other:?}; expected all, odd-local-identities, \
                 even-local-identities or one of {CHECK_NAMES:?}"
            )))
        }
    })
}

fn report_output(reports: &[CheckReport]) -> Output {
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                if r.passed { "pass" } else { "fail" }.to_string(),
                r.cases.to_string(),
                r.failure_count.to_string(),
                r.failures.join("; "),
            ]
        })
        .collect();
    let mut out = Output::table(
        &["name", "status", "cases", "failures", "counterexamples"],
        rows,
    );
    let json: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "status": if r.passed { "pass" } else { "fail" },
                "cases": r.cases,
                "failure_count": r.failure_count,
                "counterexamples": r.failures,
            })
        })
        .collect();
    out.json = if json.len() == 1 {
        json.into_iter().next().expect("one report")
    } else {
        Value::Array(json)
    };
    out
}

fn check_cmd(
    name: &str,
    lat: &LatticeArg,
    k: i64,
    prec: usize,
    seed: u64,
) -> CliResult<(Output, bool)> {
    let cell = std::cell::OnceCell::new();
    let input = || -> CliResult<LiftInputOdd> {
        if let Some(i) = cell.get() {
            return Ok(LiftInputOdd::clone(i));
        }
        let i = level_one_input(k, prec)?;
        Ok(cell.get_or_init(|| i).clone())
    };
    let names: Vec<&str> = if name == "all" {
        CHECK_NAMES.to_vec()
    } else {
        vec![name]
    };
    let mut reports = Vec::new();
    for n in names {
        let rep = run_check(n, lat, &input, seed)?;
        eprintln!(
            "{}: {} ({} cases, {} ms)",
            rep.name,
            if rep.passed { "pass" } else { "fail" },
            rep.cases,
            rep.runtime_ms
        );
        reports.push(rep);
    }
    let passed = reports.iter().all(|r| r.passed);
    Ok((report_output(&reports), passed))
}

/// Writes the result; a closed pipe on stdout is not an error.
fn emit(out: &Output, format: Format) -> CliResult<()> {
    let result = match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&out.json).expect("serializable");
            writeln!(std::io::stdout().lock(), "{text}")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            std::iter::once(&out.header)
                .chain(&out.rows)
                .try_for_each(|r| w.write_record(r))
                .map_err(std::io::Error::from)
                .and_then(|()| w.flush())
        }
    };
    match result {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(input_err(format!("output: {e}")))
        }
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let (out, passed) = match &cli.command {
        Command::Lattice { lat } => (lattice_cmd(lat)?, true),
        Command::Localpoly { lat, p, a, k } => (localpoly_cmd(lat, *p, a, *k)?, true),
        Command::Siegel { lat, twice_h, p } => (siegel_cmd(lat, twice_h.as_deref(), *p)?, true),
        Command::Halfint { k, kind, prec } => (halfint_cmd(*k, *kind, *prec)?, true),
        Command::Eis { lat, kappa, nmax } => (eis_cmd(lat, *kappa, *nmax)?, true),
        Command::Lift { input, nmax, a_max } => (lift_cmd(input, *nmax, *a_max)?, true),
        Command::Maass { input, bound } => (maass_cmd(input, *bound)?, true),
        Command::Check {
            name,
            lat,
            k,
            prec,
            seed,
        } => check_cmd(name, lat, *k, *prec, *seed)?,
    };
    emit(&out, cli.format)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
