//! Acceptance gate: one test per shipped guarantee, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use irrpoly_cli::harness;
use irrpoly_cli::report::Format;
use irrpoly_cli::run::{execute, Command, InputSource, JobSpec};
use serde_json::Value;
use std::time::Instant;

const FIG_BOX: &str = r#"{"A": [[3, -1], [-1, 4]], "lo": [0, 8], "hi": [19, 26]}"#;
const TRIANGLE: &str = r#"{"A": [[-1, -1], [2, -1], [-1, 2]], "b": [-1, 2, 2]}"#;
const WIDE_GRID_FN: &str = r#"{"n": 2, "k": 20, "a0": 103, "a": [5, 9]}"#;

fn json_spec(command: Command, input: &str) -> JobSpec {
    let mut spec = JobSpec::new(command);
    spec.input = Some(InputSource::Inline(input.to_string()));
    spec.format = Format::Json;
    spec
}

fn run_json(command: Command, input: &str) -> Value {
    let text = execute(&json_spec(command, input)).expect("command succeeds");
    serde_json::from_str(&text).expect("output is JSON")
}

fn points_of(v: &Value) -> Vec<Vec<i64>> {
    v["points"]
        .as_array()
        .expect("points array")
        .iter()
        .map(|p| {
            p.as_array()
                .expect("point")
                .iter()
                .map(|c| c.as_i64().expect("integer coordinate"))
                .collect()
        })
        .collect()
}

fn reasons(out: &harness::SuiteOutcome) -> Vec<&str> {
    out.failures.iter().map(|f| f.reason.as_str()).collect()
}

#[test]
fn acceptance_01_skew_box_regression() {
    let start = Instant::now();
    let irr = run_json(Command::Irr, FIG_BOX);
    assert_eq!(irr["count"], 8);
    assert_eq!(
        points_of(&irr),
        vec![
            vec![1, 3],
            vec![2, 6],
            vec![3, 7],
            vec![4, 3],
            vec![6, 8],
            vec![7, 4],
            vec![8, 5],
            vec![9, 8],
        ]
    );
    let part = run_json(Command::Partition, FIG_BOX);
    assert_eq!(part["piece_count"], 7);
    let counts: Vec<u64> = part["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![2, 1, 0, 2, 0, 1, 2]);
    assert!(counts.iter().all(|&c| c <= 2));
    assert!(
        start.elapsed().as_secs_f64() < 1.0,
        "skew-box regression must finish within a second"
    );
    println!("ACCEPTANCE C1 skew-box-irreducibles-and-partition: PASS");
}

#[test]
fn acceptance_02_triangle_irreducible_vs_hull() {
    let irr = points_of(&run_json(Command::Irr, TRIANGLE));
    assert_eq!(irr, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 2]]);
    let hull = points_of(&run_json(Command::Hull, TRIANGLE));
    assert_eq!(hull, vec![vec![0, 1], vec![1, 0], vec![2, 2]]);
    assert!(hull.iter().all(|v| irr.contains(v)));
    assert!(hull.len() < irr.len(), "hull vertices must be a proper subset");
    println!("ACCEPTANCE C2 triangle-irreducible-vs-hull: PASS");
}

#[test]
fn acceptance_03_random_box_partition_suite() {
    let start = Instant::now();
    let out = harness::suite_box_partition(3, 200);
    assert!(out.clean(), "failures: {:?}", reasons(&out));
    assert_eq!(out.passed, 200);
    assert!(start.elapsed().as_secs() < 300, "suite must finish within five minutes");
    println!("ACCEPTANCE C3 random-box-partition-suite: PASS");
}

#[test]
fn acceptance_04_random_simplex_cover_suite() {
    let out = harness::suite_cover(4, 50);
    assert!(out.clean(), "failures: {:?}", reasons(&out));
    assert_eq!(out.passed, 50);
    println!("ACCEPTANCE C4 random-simplex-cover-suite: PASS");
}

#[test]
fn acceptance_05_random_plane_polytope_suite() {
    let out = harness::suite_polytope(5, 100);
    assert!(out.clean(), "failures: {:?}", reasons(&out));
    assert_eq!(out.passed, 100);
    println!("ACCEPTANCE C5 random-plane-polytope-suite: PASS");
}

#[test]
fn acceptance_06_teaching_set_regression() {
    let out = run_json(Command::Teach, WIDE_GRID_FN);
    assert_eq!(out["t0"], serde_json::json!([[8, 7], [17, 2]]));
    assert_eq!(out["t1"], serde_json::json!([[1, 11], [19, 1]]));
    assert_eq!(out["total"], 4);
    println!("ACCEPTANCE C6 teaching-set-regression: PASS");
}

#[test]
fn acceptance_07_teaching_dimension_constants() {
    let start = Instant::now();
    for k in 2..=6u64 {
        let mut spec = JobSpec::new(Command::Sigma);
        spec.n = Some(2);
        spec.k = Some(k);
        spec.format = Format::Json;
        let v: Value = serde_json::from_str(&execute(&spec).unwrap()).unwrap();
        assert_eq!(v["sigma"], 4, "two-variable maximum at side {k}");
        if k == 2 {
            assert_eq!(v["function_count"], 14, "distinct functions on the 2x2 grid");
        }
    }
    for k in 2..=10u64 {
        let mut spec = JobSpec::new(Command::Sigma);
        spec.n = Some(1);
        spec.k = Some(k);
        spec.format = Format::Json;
        let v: Value = serde_json::from_str(&execute(&spec).unwrap()).unwrap();
        assert_eq!(v["sigma"], 2, "one-variable maximum at side {k}");
    }
    assert!(start.elapsed().as_secs() < 300, "searches must finish within five minutes");
    println!("ACCEPTANCE C7 teaching-dimension-constants: PASS");
}

#[test]
fn acceptance_08_separation_property_suite() {
    let out = harness::suite_teaching(8, 50, 12);
    assert!(out.clean(), "failures: {:?}", reasons(&out));
    assert_eq!(out.passed, 50);
    println!("ACCEPTANCE C8 separation-property-suite: PASS");
}

#[test]
fn acceptance_09_rationalization_suite() {
    let out = harness::suite_rationalize(9, 30, 12);
    assert!(out.clean(), "failures: {:?}", reasons(&out));
    assert_eq!(out.passed, 30);
    println!("ACCEPTANCE C9 rationalization-suite: PASS");
}

#[test]
fn acceptance_10_asymptotics_documented_as_out_of_scope() {
    // The growth-rate claims behind the count and size bounds concern widths
    // and grid sides far beyond anything a workstation can enumerate, so no
    // asymptotic measurement is attempted here. Their desk-scale stand-ins
    // are the dominance suites (C3, C5) and the constancy checks (C7), which
    // all run above.
    println!("ACCEPTANCE C10 asymptotic-claims-documented: PASS");
}
