use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcoinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoinv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json_terms(out: &Output) -> Vec<(String, i64, String)> {
    let v: Value = serde_json::from_str(&stdout(out)).expect("json output");
    v["terms"]
        .as_array()
        .expect("terms array")
        .iter()
        .map(|t| (t["q"].as_str().unwrap().to_string(), t["z"].as_i64().unwrap(), t["c"].as_str().unwrap().to_string()))
        .collect()
}

fn terms(spec: &[(&str, i64, &str)]) -> Vec<(String, i64, String)> {
    spec.iter().map(|(q, z, c)| (q.to_string(), *z, c.to_string())).collect()
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn compute_qbin_json() {
    let out = qcoinv(&["compute", "qbin", "--n", "4", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_terms(&out), terms(&[("0", 0, "1"), ("1", 0, "1"), ("2", 0, "2"), ("3", 0, "1"), ("4", 0, "1")]));
}

#[test]
fn compute_text_and_latex() {
    let out = qcoinv(&["compute", "qsup", "--L", "1,1", "--a", "1", "--format", "text"]);
    assert_eq!(stdout(&out).trim(), "1 + q");
    let out = qcoinv(&["--format", "text", "compute", "qbin-plus", "--n", "-1", "--m", "-2"]);
    assert_eq!(stdout(&out).trim(), "-q^(-1)");
    let out = qcoinv(&["compute", "qbin", "--n", "2", "--m", "1", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains('q'));
}

#[test]
fn compute_dvec() {
    let out = qcoinv(&["compute", "dvec", "--p", "2", "--pairs", "1,0;1,0"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v, serde_json::json!({"p": 2, "dims": ["2", "2"]}));
}

#[test]
fn compute_characters() {
    let out = qcoinv(&["compute", "char-coinv", "--p", "2", "--r", "0", "--N", "0,0;0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["poly"]["terms"], serde_json::json!([{"q": "0", "z": 0, "c": "1"}]));
    let fermionic = qcoinv(&["compute", "char-coinv", "--p", "3", "--r", "1", "--N", "2,1;1,2"]);
    let supernomial = qcoinv(&["compute", "char-coinv", "--p", "3", "--r", "1", "--N", "2,1;1,2", "--route", "supernomial"]);
    assert_eq!(stdout(&fermionic), stdout(&supernomial));
    let out = qcoinv(&["compute", "char-rep", "--p", "2", "--r", "0", "--D", "3", "--zwin", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_tb_passes_with_enough_cases() {
    let out = qcoinv(&["verify", "tb", "--p", "2..4", "--nmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["cases"].as_u64().unwrap() >= 1000);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn verify_knuth_passes() {
    assert_eq!(qcoinv(&["verify", "knuth", "--range", "5"]).status.code(), Some(0));
}

#[test]
fn injected_fault_reports_counterexample() {
    let out = qcoinv(&["verify", "rdc", "--range", "2", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!v["failures"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("counterexample"));
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        vec!["verify", "nonsense"],
        vec!["compute", "qbin", "--n", "x", "--m", "1"],
        vec!["compute", "qsup", "--L", "1,-1", "--a", "0"],
        vec!["verify", "tb", "--p", "1..3"],
        vec!["verify", "tb", "--config", "{\"bogus\": 1}"],
        vec!["frobnicate"],
    ] {
        let out = qcoinv(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn output_is_deterministic_across_runs_and_thread_counts() {
    let args = ["verify", "rec", "--seed", "11", "--format", "json"];
    let a = qcoinv(&[&args[..], &["--jobs", "1"]].concat());
    let b = qcoinv(&[&args[..], &["--jobs", "4"]].concat());
    let c = qcoinv(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
    let x = qcoinv(&["verify", "pascal", "--inject-fault", "--jobs", "3"]);
    let y = qcoinv(&["verify", "pascal", "--inject-fault", "--jobs", "1"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn config_document_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"p_min": 2, "p_max": 3, "nmax": 3}"#).unwrap();
    let out = qcoinv(&["verify", "tb", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let inline = qcoinv(&["verify", "tb", "--config", r#"{"p_min": 2, "p_max": 3, "nmax": 3}"#]);
    assert_eq!(out.stdout, inline.stdout);
}

#[test]
fn reports_validate_against_schema() {
    let schema = validator();
    let dir = tempfile::tempdir().unwrap();
    for (name, args, code) in [
        ("pass.json", vec!["verify", "flow"], 0),
        ("fail.json", vec!["verify", "knuth", "--range", "1", "--inject-fault"], 1),
        ("all.json", vec!["verify", "all", "--p", "2..2", "--nmax", "2", "--range", "2", "--lmax", "1", "--amax", "2"], 0),
    ] {
        let path = dir.path().join(name);
        let out = qcoinv(&[&args[..], &["--report", path.to_str().unwrap()]].concat());
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let errors: Vec<String> = schema.iter_errors(&report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
        assert!(!schema.is_valid(&serde_json::json!({"identity": "tb", "cases": 1})));
    }
}
