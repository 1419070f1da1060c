use std::process::{Command, Output};

use serde_json::Value;

fn bialg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bialg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = bialg(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (code, v)
}

#[test]
fn verify_rmatrix_trivial_triple() {
    let (code, v) = report(&["verify-rmatrix", "--n", "3", "--triple", "trivial"]);
    assert_eq!(code, 0);
    assert_eq!(v["cyb_zero"], true);
    assert_eq!(v["r_plus_r21_is_omega"], true);
}

#[test]
fn verify_rmatrix_nontrivial_and_rejected_triples() {
    let ok = r#"{"n":3,"gamma1":[1],"gamma2":[2],"tau":{"1":2}}"#;
    assert_eq!(report(&["verify-rmatrix", "--triple", ok]).0, 0);
    let bad = r#"{"n":3,"gamma1":[1],"gamma2":[1],"tau":{"1":1}}"#;
    let (code, v) = report(&["verify-rmatrix", "--triple", bad]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "invalid");
}

#[test]
fn construct_cocycle_emits_a_verified_matrix() {
    let (code, v) = report(&["construct-cocycle", "--d", "-1", "--diag", "2,5,13,10"]);
    assert_eq!(code, 0);
    assert_eq!(v["d"], "-1");
    assert_eq!(v["X"]["n"], 4);
    assert_eq!(v["D"]["rows"][2][2][0]["num"], "13");
}

#[test]
fn construct_cocycle_failures_map_to_exit_codes() {
    assert_eq!(report(&["construct-cocycle", "--d", "5", "--diag", "2"]).0, 1);
    assert_eq!(report(&["construct-cocycle", "--d", "-1", "--diag", "-1,-1"]).0, 1);
    assert_eq!(report(&["construct-cocycle", "--d", "4", "--diag", "1"]).0, 2);
    assert_eq!(bialg(&["construct-cocycle", "--d", "5", "--diag", "x"]).status.code(), Some(2));
}

#[test]
fn cohomologous_reports_false_with_exit_zero() {
    let (code, v) = report(&["cohomologous", "--d", "5", "--A", "2,2", "--B", "1,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["cohomologous"], "false");
    let (code, v) = report(&["cohomologous", "--d", "-1", "--A", "2,5,13,10", "--B", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["cohomologous"], "true");
}

#[test]
fn classify_reports_classes_and_quaternions() {
    let (code, v) = report(&["classify", "--d", "5", "--diag", "2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["class_vector"], serde_json::json!(["2"]));
    assert_eq!(v["quaternions"][0]["split"], false);
    assert_eq!(v["quaternions"][0]["ramified"], serde_json::json!(["2", "5"]));
}

#[test]
fn manin_check_reports_the_normalization_mismatch() {
    let (code, v) = report(&["manin-check", "--n", "2", "--d", "-1"]);
    assert_eq!(code, 1);
    assert_eq!(v["duality"], true);
    assert_eq!(v["r_matches"], false);
    assert_eq!(v["matches_scaled_swap"], true);
}

#[test]
fn quaternion_subcommands() {
    let (_, v) = report(&["quat", "symbol", "-a", "2", "-b", "5", "-p", "5"]);
    assert_eq!(v["symbol"], -1);
    let (_, v) = report(&["quat", "symbol", "-a", "-1", "-b", "-1", "-p", "inf"]);
    assert_eq!(v["symbol"], -1);
    let (_, v) = report(&["quat", "split", "-a", "-1", "-b", "-1"]);
    assert_eq!(v["split"], false);
    let (_, v) = report(&["quat", "iso", "--a1", "-1", "--b1", "-1", "--a2", "-1", "--b2", "-2"]);
    assert_eq!(v["isomorphic"], true);
    let (code, v) = report(&["quat", "solve-norm", "-c", "1", "-e", "-1", "-d", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["obstruction"], "inf");
    let (code, v) = report(&["quat", "solve-norm", "-c", "2", "-e", "2", "-d", "5", "--budget", "10s"]);
    assert_eq!(code, 0);
    assert_eq!(v["solvable"], "true");
}

#[test]
fn antidiag_and_twisted() {
    let (code, v) = report(&["antidiag", "--n", "2", "--d", "5"]);
    assert_eq!(code, 0);
    assert!(v["normalized"].is_object());
    let (code, v) = report(&["twisted", "--d", "-1", "--dprime", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 0);
    let (code, v) = report(&["twisted", "--d", "-1", "--dprime", "-1"]);
    assert_eq!(code, 2, "{v}");
}

#[test]
fn verify_bialgebra_with_a_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let (_, c) = report(&["construct-cocycle", "--d", "5", "--diag", "2,2"]);
    let x = dir.path().join("x.json");
    std::fs::write(&x, c["X"].to_string()).unwrap();
    let (code, v) = report(&["verify-bialgebra", "--n", "2", "--x", x.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["real_form"], true);
}

#[test]
fn json_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = bialg(&["quat", "split", "-a", "1", "-b", "7", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("[ok] quat split"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["split"], true);
}

#[test]
fn batch_preserves_order_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jobs.json");
    let jobs = serde_json::json!([
        ["construct-cocycle", "--d", "-1", "--diag", "2,5"],
        ["quat", "symbol", "-a", "2", "-b", "5", "-p", "5"],
        ["cohomologous", "--d", "5", "--A", "2,2", "--B", "1,4"],
        ["construct-cocycle", "--d", "5", "--diag", "-1,-1"],
    ]);
    std::fs::write(&path, jobs.to_string()).unwrap();
    let first = bialg(&["batch", path.to_str().unwrap()]);
    let second = bialg(&["batch", path.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    let names: Vec<&str> = v["jobs"].as_array().unwrap().iter().map(|j| j["command"].as_str().unwrap()).collect();
    assert_eq!(names, ["construct-cocycle", "quat symbol", "cohomologous", "construct-cocycle"]);

    std::fs::write(&path, r#"[["quat", "split", "-a", "2", "-b", "5"], ["bogus"]]"#).unwrap();
    assert_eq!(bialg(&["batch", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn undecided_exit_code_when_the_budget_is_exhausted() {
    // 2 is not a norm from Q(√5) and 2/3 is not either, so the witness
    // needs the search, which a zero budget cuts off
    let (code, v) = report(&["quat", "solve-norm", "-c", "3", "-e", "2", "-d", "5", "--budget-height", "0"]);
    assert_eq!(v["solvable"], "undecided", "{v}");
    assert_eq!(code, 3);
}
