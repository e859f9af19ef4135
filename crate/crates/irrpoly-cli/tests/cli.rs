//! End-to-end checks of the installed binary: output contracts, exit codes,
//! and byte-level determinism.

use serde_json::Value;
use std::process::{Command, Output};

fn irrpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irrpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn irr_lists_the_skew_box_points() {
    let path = fixture("fig_box.json");
    let out = irrpoly(&["irr", "--input", &path, "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["command"], "irr");
    assert_eq!(v["count"], 8);
    assert_eq!(v["points"][0], serde_json::json!([1, 3]));

    let again = irrpoly(&["irr", "--input", &path, "--format", "json"]);
    assert_eq!(out.stdout, again.stdout, "same job must give identical bytes");
}

#[test]
fn inline_json_input_is_accepted() {
    let out = irrpoly(&[
        "irr",
        "--input",
        r#"{"A": [[-1, -1], [2, -1], [-1, 2]], "b": [-1, 2, 2]}"#,
        "--format",
        "json",
    ]);
    assert_eq!(stdout_json(&out)["count"], 4);
}

#[test]
fn hull_drops_the_interior_irreducible_point() {
    let out = irrpoly(&["hull", "--input", &fixture("triangle.json"), "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["points"], serde_json::json!([[0, 1], [1, 0], [2, 2]]));
}

#[test]
fn partition_tsv_emits_one_row_per_piece() {
    let out = irrpoly(&["partition", "--input", &fixture("fig_box.json"), "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 7);
    let counts: Vec<&str> = rows
        .iter()
        .map(|r| r.split('\t').nth(1).expect("count column"))
        .collect();
    assert_eq!(counts, ["2", "1", "0", "2", "0", "1", "2"]);
}

#[test]
fn teach_human_output_names_both_classes() {
    let out = irrpoly(&["teach", "--input", &fixture("thresh20.json")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4 point(s)"));
    assert!(text.contains("class 0: (8, 7) (17, 2)"));
    assert!(text.contains("class 1: (1, 11) (19, 1)"));
}

#[test]
fn sigma_reports_the_plane_constant() {
    let out = irrpoly(&["sigma", "--n", "2", "--k", "5", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma"], 4);
}

#[test]
fn rationalize_clears_the_fractions() {
    let out = irrpoly(&["rationalize", "--input", &fixture("ratl.json"), "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["command"], "rationalize");
    for part in v["b"].as_array().unwrap() {
        part.as_str().unwrap().parse::<i64>().expect("integer coefficient");
    }
    v["b0"].as_str().unwrap().parse::<i64>().expect("integer offset");
}

#[test]
fn malformed_input_exits_two_with_a_record() {
    let out = irrpoly(&["irr", "--input", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    let record: Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(record["error"], "malformed");
}

#[test]
fn unbounded_input_exits_one_with_a_record() {
    let out = irrpoly(&["irr", "--input", &fixture("unbounded.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    let record: Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(record["error"], "domain");
}

#[test]
fn unknown_suite_exits_two() {
    let out = irrpoly(&["verify", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_runs_are_deterministic_for_a_seed() {
    let args = [
        "verify",
        "teaching",
        "--trials",
        "2",
        "--seed",
        "7",
        "--k",
        "5",
        "--format",
        "json",
    ];
    let first = irrpoly(&args);
    let second = irrpoly(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = ["verify", "box-partition", "--trials", "5", "--seed", "1", "--format", "json"];
    let first = irrpoly(&args);
    let second = irrpoly(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["failed"], 0);
}
