use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use simiscalc::theorems::WitnessReport;
use tempfile::TempDir;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Report {
    command: String,
    input_digest: String,
    result: Value,
    certificates: Vec<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    timings: Option<Value>,
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_simiscalc"));
    c.env_remove("SIMISCALC_GEN_LIMIT");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], file: Option<&Path>) -> Output {
    let mut c = bin();
    c.args(args);
    if let Some(f) = file {
        c.arg(f);
    }
    c.output().unwrap()
}

fn report(out: &Output) -> Report {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad report {e}: {text}"))
}

const WEIGHTED_PATH: &str = "x1*x2^2, x2*x3, x3^2*x4\n";
const QUARTIC_PATH: &str = "x1*x2^4, x2^4*x3, x2*x3^4, x3^4*x4\n";

#[test]
fn simis_failure_exits_2_with_verified_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "quartic_path.ideal", QUARTIC_PATH);
    let out = run(&["simis", "--max-degree", "2"], Some(&f));
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r.result["first_failure"], 2);
    assert_eq!(r.result["bounded"], true);
    assert_eq!(r.certificates.len(), 1);
    assert!(r.certificates[0].verified);
    assert_eq!(r.certificates[0].rendered, "x2^4*x3^4");
}

#[test]
fn simis_success_exits_0() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "weighted_path.ideal", WEIGHTED_PATH);
    let out = run(&["simis", "--max-degree", "4"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.result["degrees"].as_array().unwrap().len(), 4);
    assert!(r.certificates.is_empty());
}

#[test]
fn classify_path_example() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "weighted_path.ideal", WEIGHTED_PATH);
    let out = run(&["classify"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let s2 = &r.result["support2"];
    assert_eq!(s2["graph"]["path"], 4);
    assert_eq!(s2["graph"]["bipartite"], true);
    assert_eq!(s2["weighting"], Value::Null);
    assert_eq!(r.result["primes"]["decomposition_minimal"], false);
    assert_eq!(r.result["primes"]["embedded"], serde_json::json!([]));
    let preds = s2["predicates"].as_array().unwrap();
    assert_eq!(preds.len(), 8);
    for p in preds {
        if let Some(checks) = p["cross_check"]["checks"].as_array() {
            assert!(checks.iter().all(|c| c["outcome"] != "disagrees"), "{p}");
        }
    }
}

#[test]
fn classify_reports_non_support2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cubic.ideal", "x1*x2*x3, x3*x4\n");
    let out = run(&["classify"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.result["support2"], Value::Null);
    assert!(r.result["not_support2"].as_str().unwrap().contains("x1*x2*x3"));
}

#[test]
fn cycle_campaign_exits_0() {
    let out = run(
        &["fuzz", "--family", "cycle", "--trials", "200", "--seed", "7", "--n", "6", "--max-exponent", "3", "--max-alpha", "1"],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let tally = &r.result["report"]["tallies"][0];
    assert_eq!(tally["predicate"], "cycle-classification");
    assert_eq!(tally["agreements"], 200);
    assert_eq!(tally["discrepancies"], 0);
}

#[test]
fn fuzz_reports_are_byte_identical() {
    let args = ["fuzz", "--family", "whisker", "--trials", "40", "--seed", "3", "--m", "3", "--max-alpha", "2"];
    let (a, b) = (run(&args, None), run(&args, None));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn membership_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.ideal", QUARTIC_PATH);
    let f = f.to_str().unwrap();
    let sym = bin().args(["member", f, "x2^4*x3^4", "-s", "2", "--symbolic"]).output().unwrap();
    assert_eq!(sym.status.code(), Some(0));
    assert_eq!(report(&sym).result["member"], true);
    let ord = bin().args(["member", f, "x2^4*x3^4", "-s", "2"]).output().unwrap();
    assert_eq!(ord.status.code(), Some(3));
    assert_eq!(report(&ord).result["member"], false);
}

#[test]
fn reports_round_trip_and_digest_input() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.ideal", QUARTIC_PATH);
    for args in [
        vec!["decompose"],
        vec!["power", "-s", "2"],
        vec!["power", "-s", "2", "--symbolic"],
        vec!["symbolic", "-s", "2"],
        vec!["polarize"],
        vec!["classify"],
        vec!["simis", "--max-degree", "3"],
    ] {
        let out = run(&args, Some(&f));
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let r = report(&out);
        assert_eq!(r.command, args[0]);
        assert_eq!(r.input_digest, hex::encode(Sha256::digest(QUARTIC_PATH.as_bytes())));
        assert_eq!(serde_json::to_string(&r).unwrap(), text.trim_end(), "{args:?}");
    }
}

#[test]
fn decompose_golden() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.ideal", QUARTIC_PATH);
    let r = report(&run(&["decompose"], Some(&f)));
    assert_eq!(r.result["irreducible"], serde_json::json!(["<x1, x3>", "<x2^4, x3^4>", "<x2, x4>"]));
    assert_eq!(r.result["decomposition_minimal"], true);
}

#[test]
fn json_input_is_accepted() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.json", r#"{"vars": 3, "generators": [[1, 1, 0], [0, 1, 1]]}"#);
    let out = run(&["power", "-s", "2"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).result["count"], 3);
}

#[test]
fn parse_errors_exit_1_with_position() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.ideal", "x1*x2,\nx0*x3\n");
    let out = run(&["decompose"], Some(&f));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column 2"), "{err}");
}

#[test]
fn unit_ideal_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unit.ideal", "x1^0\n");
    assert_eq!(run(&["decompose"], Some(&f)).status.code(), Some(1));
}

#[test]
fn generator_limit_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.ideal", QUARTIC_PATH);
    let out = bin().env("SIMISCALC_GEN_LIMIT", "5").args(["power", "-s", "3"]).arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("generator limit"));
    let bad = bin().env("SIMISCALC_GEN_LIMIT", "lots").args(["decompose"]).arg(&f).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["bogus"], None).status.code(), Some(1));
    assert_eq!(run(&["fuzz", "--family", "hexagon"], None).status.code(), Some(1));
    assert_eq!(run(&["fuzz", "--family", "cycle", "--m", "3"], None).status.code(), Some(1));
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
}

#[test]
fn timings_only_on_request() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.ideal", WEIGHTED_PATH);
    assert!(report(&run(&["decompose"], Some(&f))).timings.is_none());
    assert!(report(&run(&["--timings", "decompose"], Some(&f))).timings.is_some());
}

#[test]
fn pretty_output_is_text() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.ideal", WEIGHTED_PATH);
    let out = run(&["--pretty", "classify"], Some(&f));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("path: P4"));
    assert!(text.contains("standard linear weighting: none"));
}
