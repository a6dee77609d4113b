use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghz-covariance")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (d, n) in [("3", "4"), ("3", "3"), ("5", "3"), ("7", "6"), ("2", "14")] {
        let path = dir.path().join(format!("c_{d}_{n}.json"));
        let p = path.to_str().unwrap();
        let out = bin(&["construct", "--d", d, "--n", n, "--output", p]);
        assert_eq!(out.status.code(), Some(0), "construct {d} {n}");
        let out = bin(&["verify", "--input", p]);
        assert_eq!(out.status.code(), Some(0), "verify {d} {n}");
        let cert = json(&out);
        assert_eq!(cert["quantum_ok"], true);
        assert_eq!(cert["hv_verdict"]["status"], "UNSAT");
    }
}

#[test]
fn verify_method1_with_dense_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m1.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        bin(&["construct", "--d", "3", "--n", "4", "--method", "1", "--f", "3", "--output", p]).status.code(),
        Some(0)
    );
    let out = bin(&["verify", "--input", p, "--oracle", "dense"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json(&out);
    assert_eq!(cert["oracle_checked"], true);
    assert_eq!(cert["brute_force_checked"], true);
    assert_eq!(cert["irreducible"], serde_json::json!([true, true, true, true]));
}

#[test]
fn corrupted_file_fails_verification() {
    let out = bin(&["construct", "--d", "3", "--n", "3", "--method", "2"]);
    let mut c = json(&out);
    c["operators"][1]["exponent"] = Value::from("1/3");
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", &c.to_string());
    let out = bin(&["verify", "--input", &p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["quantum_ok"], false);
}

#[test]
fn over_cap_oracle_warns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    let p = path.to_str().unwrap();
    bin(&["construct", "--d", "2", "--n", "13", "--output", p]);
    let out = bin(&["verify", "--input", p, "--oracle", "dense"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["oracle_checked"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{\"d\": 3}");
    assert_eq!(bin(&["verify", "--input", &p]).status.code(), Some(2));
    assert_eq!(bin(&["hv-solve", "--input", &p]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--input", "/nonexistent/file.json"]).status.code(), Some(2));
    let p = write(
        dir.path(),
        "angle.json",
        r#"{"d":3,"n":3,"method":2,"phi_o":"2/18","operators":[],"target":{"angles":["0/1","0/1","0/1"],"exponent":"0/1"}}"#,
    );
    assert_eq!(bin(&["verify", "--input", &p]).status.code(), Some(2));
    assert_eq!(bin(&["classify", "--d-max", "1", "--n-max", "5"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn no_contradiction_payload() {
    let out = bin(&["construct", "--d", "3", "--n", "6", "--method", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "NoContradiction");
    assert_eq!(v["method"], 1);
}

#[test]
fn classify_csv_rows() {
    let out = bin(&["classify", "--d-max", "12", "--n-max", "20", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,N,regime,witness_method");
    assert_eq!(lines.len(), 199);
    assert!(lines.contains(&"5,3,3,3"));
    assert!(lines.contains(&"12,5,1,1"));
    let out = bin(&["classify", "--d-max", "6", "--n-max", "8", "--format", "json", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let cells = json(&out);
    assert_eq!(cells.as_array().unwrap().len(), 5 * 6);
    assert_eq!(cells[0]["f"], 2);
}

#[test]
fn hv_solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // f·ΣY ≡ N with f = 3, N = 6 over Z_3 collapses to 0 ≡ 0.
    let sat = r#"{"d":3,"vars":[{"qudit":1,"angle":"1/9"},{"qudit":2,"angle":"1/9"}],"constraints":[{"coeffs":[[0,3],[1,3]],"rhs":0}]}"#;
    let p = write(dir.path(), "sat.json", sat);
    let out = bin(&["hv-solve", "--input", &p]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "SAT");
    assert_eq!(v["witness"]["values"], serde_json::json!([0, 0]));
    let unsat = r#"{"d":3,"vars":[{"qudit":1,"angle":"0/1"}],"constraints":[{"coeffs":[[0,3]],"rhs":1}]}"#;
    let p = write(dir.path(), "unsat.json", unsat);
    let out = bin(&["hv-solve", "--input", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "UNSAT");
}

#[test]
fn invariance_demo_reports() {
    let out = bin(&["invariance-demo", "--d", "3", "--n", "3", "--angle", "1/12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["antisymmetry"].as_array().unwrap().iter().all(|r| r["forced"] == 0));
    let out = bin(&["invariance-demo", "--d", "2", "--n", "3", "--angle", "1/8", "--partition", "1:2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["scaling"]["per_qudit"], serde_json::json!([0, 0, 0]));
    assert_eq!(bin(&["invariance-demo", "--d", "2", "--n", "3", "--angle", "2/16"]).status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical() {
    let a = bin(&["construct", "--d", "11", "--n", "4"]);
    let b = bin(&["construct", "--d", "11", "--n", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let a = bin(&["circle", "--d", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a).as_array().unwrap().len(), 6);
}
