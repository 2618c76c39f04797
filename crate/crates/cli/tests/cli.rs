//! End-to-end runs of the `jfl` binary: output shape, exit codes and
//! reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jfl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jfl"))
        .args(args)
        .env_remove("JFL_PREC")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn gram_file(dir: &tempfile::TempDir, name: &str, gram: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, format!("{{\"gram\": {gram}}}")).unwrap();
    path
}

#[test]
fn lattice_invariants_of_a2() {
    let out = jfl(&["lattice", "--lattice", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["big_d_s"], 3);
    assert_eq!(v["frak_d_s"], 3);
    assert_eq!(v["s1"], serde_json::json!([3]));
}

#[test]
fn eisenstein_table_from_gram_file() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = gram_file(&dir, "a1.json", "[[2]]");
    let out = jfl(&[
        "eis",
        "--gram",
        a1.to_str().unwrap(),
        "--kappa",
        "4",
        "--nmax",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[2]["N"], "3");
    assert_eq!(rows[2]["A"], "-2/9");
    assert_eq!(rows[3]["A"], "-1/2");

    let csv = jfl(&[
        "eis",
        "--lattice",
        "A1",
        "--kappa",
        "4",
        "--nmax",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "N,A\n1,0/1\n2,0/1\n3,-2/9\n4,-1/2\n"
    );
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let odd = gram_file(&dir, "odd.json", "[[3]]");
    let out = jfl(&["lattice", "--gram", odd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("diagonal must be even"));

    let not_max = gram_file(&dir, "a1x4.json", "[[8]]");
    assert_eq!(
        jfl(&["lattice", "--gram", not_max.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(jfl(&["lattice"]).status.code(), Some(2));
    assert_eq!(jfl(&["check", "no-such-check"]).status.code(), Some(2));
    assert_eq!(
        jfl(&["localpoly", "--lattice", "A1", "--p", "2", "--a", "x/y"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(jfl(&["lattice", "--lattice", "B7"]).status.code(), Some(2));
}

#[test]
fn counting_check_on_a_gram_file() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = gram_file(&dir, "a2.json", "[[2, 1], [1, 2]]");
    let out = jfl(&["check", "counting", "--gram", a2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["cases"], 3);
}

#[test]
fn lift_coefficients_and_check() {
    let out = jfl(&["lift", "--nmax", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.starts_with("N,c\n1,0/1\n2,0/1\n3,1/1\n4,-2/1\n"),
        "{text}"
    );

    let out = jfl(&["check", "lift-reproduces-g"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cases"], 400);
}

#[test]
fn maass_rows_carry_content() {
    let out = jfl(&["maass", "--bound", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert!(rows.iter().any(|r| r["epsilon"] == "2"));
    let first = &rows[0];
    assert_eq!(first["x_e"], "1");
    assert_eq!(first["d_eta"], "4");
    assert_eq!(first["c"], "-2/1");
}

#[test]
fn output_is_reproducible() {
    let args = ["check", "structural", "--seed", "7"];
    let a = jfl(&args);
    let b = jfl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let siegel = ["siegel", "--lattice", "D4", "--p", "2", "--format", "csv"];
    assert_eq!(jfl(&siegel).stdout, jfl(&siegel).stdout);
}
