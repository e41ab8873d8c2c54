use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const H1: &str = r#"{"vertices":["x1","x2","x3","x4","x5","x6"],"edges":[["x1","x2","x3"],["x2","x3","x4"],["x4","x5","x6"]]}"#;
const STAR: &str = r#"{"vertices":["x1","x2","x3","x4"],"edges":[["x1","x2"],["x1","x3"],["x1","x4"]]}"#;
const C5: &str = r#"{"vertices":["x1","x2","x3","x4","x5"],"edges":[["x1","x2"],["x2","x3"],["x3","x4"],["x4","x5"],["x1","x5"]]}"#;

fn hyperreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn instance(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn invariants_of_h1() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperreg(&["invariants", &instance(dir.path(), "h1.json", H1)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["matchings"]["c"], 2);
    assert_eq!(r["matchings"]["c_prime"], 3);
    assert_eq!(r["matchings"]["m"], 4);
    assert!(r["bouquets"]["d"].is_u64() && r["reg"].is_u64() && r["pd"].is_u64());
    assert!(String::from_utf8_lossy(&out.stderr).contains("c = 2, c' = 3"));
}

#[test]
fn invariants_of_star() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperreg(&["invariants", &instance(dir.path(), "star.json", STAR)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["matchings"]["c_prime"], 1);
    assert_eq!(r["dim"], 2);
}

#[test]
fn invariants_output_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let f = instance(dir.path(), "h1.json", H1);
    assert_eq!(hyperreg(&["invariants", &f]).stdout, hyperreg(&["invariants", &f]).stdout);
}

#[test]
fn duplicate_edge_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = instance(
        dir.path(),
        "dup.json",
        r#"{"vertices":["x1","x2"],"edges":[["x1","x2"],["x1","x2"]]}"#,
    );
    let out = hyperreg(&["invariants", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(r#"["x1", "x2"]"#));
}

#[test]
fn caps_exit_three_with_omissions() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperreg(&["invariants", &instance(dir.path(), "h1.json", H1), "--edge-cap", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let r = json(&out);
    assert!(r["matchings"].is_null());
    assert!(!r["omitted"].as_array().unwrap().is_empty());
}

#[test]
fn skip_homology_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = instance(dir.path(), "star.json", STAR);
    let out = hyperreg(&["invariants", &f, "--skip-homology"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["betti"].is_null());
    let out = hyperreg(&["invariants", &f, "--field", "f2"]);
    assert_eq!(json(&out)["field"], "F2");
    assert_eq!(hyperreg(&["invariants", &f, "--field", "f4"]).status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperreg(&["check", &instance(dir.path(), "h1.json", H1), "--theorem", "lemma-dim"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hypotheses_hold"], true);
    assert_eq!(v["conclusion_holds"], true);

    let out = hyperreg(&["check", &instance(dir.path(), "c5.json", C5), "--theorem", "theorem-main"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hypotheses_hold"], false);
    assert!(v["conclusion_holds"].is_null());

    let out = hyperreg(&["check", &instance(dir.path(), "star.json", STAR), "--theorem", "theorem-final"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["conclusion_holds"], true);
}

#[test]
fn verify_exhaustive_graphs() {
    let out = hyperreg(&["verify", "theorem-main", "--family", r#"{"kind":"all_graphs","n":5,"min_n":1}"#]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["counterexamples"].as_array().unwrap().len(), 0);
    assert!(r["elapsed_ms"].is_null());
}

#[test]
fn self_test_writes_rerunnable_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = hyperreg(&[
        "verify",
        "lemma-dim",
        "--family",
        r#"{"kind":"named","name":"h1"}"#,
        "--self-test",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let cex = &r["counterexamples"][0];
    let file = cex["file"].as_str().unwrap();
    assert!(file.contains("report-counterexamples"));
    let rerun = hyperreg(&["check", file, "--theorem", "lemma-dim", "--self-test"]);
    assert_eq!(rerun.status.code(), Some(1));
    assert_eq!(hyperreg(&["check", file, "--theorem", "lemma-dim"]).status.code(), Some(0));
}

#[test]
fn bad_suite_and_family() {
    assert_eq!(hyperreg(&["verify", "no-such-suite", "--family", "{}"]).status.code(), Some(2));
    assert_eq!(
        hyperreg(&["verify", "lemma-dim", "--family", r#"{"kind":"all_graphs","n":3,"bogus":1}"#]).status.code(),
        Some(2)
    );
    // past the enumeration cap
    assert_eq!(
        hyperreg(&["verify", "lemma-dim", "--family", r#"{"kind":"all_graphs","n":9}"#]).status.code(),
        Some(3)
    );
    assert_eq!(
        hyperreg(&["verify", "lemma-dim", "--family", r#"{"kind":"all_graphs","n":3,"filters":["bogus"]}"#])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hyperreg(&["check", "/nonexistent.json", "--theorem", "lemma-dim"]).status.code(), Some(2));
}

#[test]
fn suites_lists_every_statement() {
    let out = hyperreg(&["suites"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().any(|l| l.starts_with("recursion-pd")));
}
