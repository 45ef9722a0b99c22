use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn gl11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl11")).args(args).output().expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture(name).display().to_string()
}

/// Run with JSON output and return (exit code, report).
fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = gl11(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), v)
}

fn failures(report: &Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["passed"].as_bool().unwrap())
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

fn names(report: &Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn empty_selftest_passes() {
    let (code, r) = json(&["group-selftest", "--count", "0"]);
    assert_eq!(code, 0);
    assert!(r["checks"].as_array().unwrap().is_empty());
}

#[test]
fn default_selftest_passes() {
    let (code, r) = json(&["group-selftest"]);
    assert_eq!(code, 0, "{r}");
    assert!(names(&r).contains(&"sdet".to_string()));
}

#[test]
fn corrupted_selftest_fails_on_products() {
    let (code, r) = json(&["group-selftest", "--count", "20", "--corrupt"]);
    assert_eq!(code, 1);
    assert_eq!(failures(&r), ["product_matrix"]);
}

#[test]
fn trivial_triangle_data_passes() {
    let (code, _) = json(&["cech-verify", "--nerve", &fx("triangle_nerve.json"), "--data", &fx("triangle_zero.json")]);
    assert_eq!(code, 0);
}

#[test]
fn genus_one_fixture_needs_quadratic_term() {
    let nerve = fx("genus1_nerve.json");
    let (code, _) = json(&["cech-verify", "--nerve", &nerve, "--data", &fx("genus1_transitions.json")]);
    assert_eq!(code, 0);
    let (code, r) = json(&["cech-verify", "--nerve", &nerve, "--data", &fx("genus1_no_quadratic.json")]);
    assert_eq!(code, 1);
    assert_eq!(failures(&r), ["h"]);
}

#[test]
fn checks_are_sorted_and_output_is_reproducible() {
    let args = ["garnier-check", "--m", "4", "--seed", "3"];
    let a = gl11(&args);
    let b = gl11(&args);
    assert_eq!(a.stdout, b.stdout);
    let (_, r) = json(&args);
    let n = names(&r);
    let mut sorted = n.clone();
    sorted.sort();
    assert_eq!(n, sorted);
}

#[test]
fn gaudin_six_sites_commute() {
    let (code, r) = json(&["gaudin-commute", "--m", "6"]);
    assert_eq!(code, 0, "{r}");
    let pairs = names(&r).into_iter().filter(|n| n.starts_with("pair_")).count();
    assert_eq!(pairs, 15);
}

#[test]
fn system_file_checks() {
    let sys = fx("system3.json");
    assert_eq!(json(&["garnier-check", "--system", &sys]).0, 0);
    assert_eq!(json(&["quantize-compare", "--system", &sys]).0, 0);
    assert_eq!(json(&["gaudin-commute", "--system", &sys]).0, 0);
}

#[test]
fn hitchin_fixture_solves_the_equations() {
    let (code, r) = json(&["hitchin-residual", "--metric", &fx("hitchin_metric.json"), "--higgs", &fx("hitchin_higgs.json")]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(names(&r), ["residual.a", "residual.beta", "residual.d", "residual.gamma"]);
    // the same metric is not flat once the Higgs terms are present
    let (code, r) = json(&["hitchin-residual", "--metric", &fx("hitchin_metric.json")]);
    assert_eq!(code, 1);
    assert_eq!(failures(&r), ["curvature.a", "curvature.d"]);
}

#[test]
fn punctures_and_normalization() {
    let graph = fx("theta_planar.json");
    let (code, _) = json(&["fatgraph", "check-punctures", "--graph", &graph, "--connection", &fx("theta_planar_trivial_punctures.json")]);
    assert_eq!(code, 0);
    let conn = fx("theta_planar_connection.json");
    let (code, r) = json(&["fatgraph", "check-punctures", "--graph", &graph, "--connection", &conn]);
    assert_eq!(code, 1);
    assert_eq!(failures(&r).len(), 3);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("normalized.json");
    let out = out.to_str().unwrap();
    let (code, r) = json(&["fatgraph", "normalize", "--graph", &graph, "--connection", &conn, "--out", out]);
    assert_eq!(code, 0);
    assert_eq!(r["values"]["residual_gauge"], serde_json::json!([1, 2]));
    // normalizing twice changes nothing, so the supertrace is unchanged
    let (_, again) = json(&["fatgraph", "normalize", "--graph", &graph, "--connection", out]);
    assert_eq!(again["passed"], true);
    let before = json(&["fatgraph", "holonomy", "--graph", &graph, "--connection", &conn, "--cycle", "0,-1"]).1;
    let after = json(&["fatgraph", "holonomy", "--graph", &graph, "--connection", out, "--cycle", "0,-1"]).1;
    assert_eq!(before["passed"], true);
    let str_of = |v: &Value| v["values"]["supertrace"]["terms"].as_array().unwrap().len();
    assert_eq!(str_of(&before), str_of(&after));
}

#[test]
fn broken_cycles_are_rejected() {
    let graph = fx("theta_planar.json");
    let conn = fx("theta_planar_connection.json");
    let out = gl11(&["fatgraph", "holonomy", "--graph", &graph, "--connection", &conn, "--cycle", "0,x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gl11(&["fatgraph", "holonomy", "--graph", &graph, "--connection", &conn, "--cycle", "0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dims_closed_form_and_counted() {
    let (code, r) = json(&["fatgraph", "dims", "--genus", "2", "--punctures", "1", "--constrained", "--su"]);
    assert_eq!(code, 0);
    assert_eq!(r["values"]["closed_form"], serde_json::json!([4, 4]));
    let torus = fx("k4_torus.json");
    let (code, r) = json(&["fatgraph", "dims", "--genus", "1", "--punctures", "2", "--constrained", "--graph", &torus]);
    assert_eq!(code, 0);
    assert_eq!(r["values"]["counted"], serde_json::json!([2, 4]));
    let out = gl11(&["fatgraph", "dims", "--genus", "2", "--punctures", "1", "--graph", &torus]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"sites\": [\n  {\"z\": [0, 0],\n").unwrap();
    let out = gl11(&["garnier-check", "--system", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));

    let bad_mono = r#"{"n": 2, "mode": "sl", "edges": {"0,1": {
        "h": {"terms": []},
        "alpha": {"terms": [{"mono": [2, 1], "re": 1.0}]},
        "beta": {"terms": []}}}}"#;
    std::fs::write(&path, bad_mono).unwrap();
    let out = gl11(&["cech-verify", "--nerve", &fx("triangle_nerve.json"), "--data", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("edges.0,1.alpha.terms[0].mono"));

    assert_eq!(gl11(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(gl11(&["garnier-check"]).status.code(), Some(2));
}

#[test]
fn text_report_summarizes() {
    let out = gl11(&["group-selftest", "--count", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("group-selftest (tolerance 1e-9)"));
    assert!(text.trim_end().ends_with("result: pass (7 checks)"));
}
