use std::fs;
use std::path::Path;

use serde_json::Value;
use twophase_walk::cli::{run, EXIT_CONFIG, EXIT_IO, EXIT_OK};
use twophase_walk::io::read_csv;

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let out = dir.join(name);
    let mut argv = vec!["qwalk"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--output", out.to_str().unwrap()]);
    let code = run(argv);
    (code, fs::read_to_string(&out).unwrap_or_default())
}

#[test]
fn limit_hadamard_origin_is_two_ninths() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "limit.csv",
        &[
            "limit",
            "--sigma-plus",
            "0",
            "--sigma-minus",
            "0",
            "--init",
            "1,0",
            "--T",
            "5",
        ],
    );
    assert_eq!(code, EXIT_OK);
    let m = read_csv(&dir.path().join("limit.csv")).unwrap();
    assert_eq!(m.range(), (-5, 5));
    assert!((m.get(0) - 2.0 / 9.0).abs() < 1e-16);
    assert!(text.starts_with("x,value\n-5,"));
}

#[test]
fn one_step_average_is_delta() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_to(
        dir.path(),
        "ta.csv",
        &[
            "time-average",
            "--sigma-plus",
            "1.5pi",
            "--sigma-minus",
            "1pi",
            "--init",
            "1,0",
            "--T",
            "1",
        ],
    );
    assert_eq!(code, EXIT_OK);
    let m = read_csv(&dir.path().join("ta.csv")).unwrap();
    assert_eq!(m.values(), &[0.0, 1.0, 0.0]);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in [
        "evolve",
        "time-average",
        "stationary",
        "limit",
        "singular",
        "compare",
    ] {
        let args = [
            cmd,
            "--sigma-plus",
            "0.3",
            "--sigma-minus",
            "-1.1",
            "--init-polar",
            "0.6,0.2,0.8,-1pi",
            "--T",
            "40",
            "--format",
            "json",
        ];
        let (c1, a) = run_to(dir.path(), "a.json", &args);
        let (c2, b) = run_to(dir.path(), "b.json", &args);
        assert_eq!((c1, c2), (EXIT_OK, EXIT_OK), "{cmd}");
        assert!(!a.is_empty());
        assert_eq!(a, b, "{cmd}");
    }
}

#[test]
fn json_document_shape() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "s.json",
        &[
            "stationary",
            "--sigma-plus",
            "1.5pi",
            "--sigma-minus",
            "pi",
            "--j",
            "3",
            "--c",
            "0.5i",
            "--L",
            "4",
            "--T",
            "2",
            "--format",
            "json",
        ],
    );
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "stationary");
    assert_eq!(v["params"]["j"], 3);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for r in rows {
        assert!((r["value"].as_f64().unwrap() - 0.25).abs() < 1e-15);
    }
}

#[test]
fn singular_lists_four_points_for_hadamard() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(dir.path(), "sp.csv", &["singular"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let residue: f64 = l.rsplit(',').next().unwrap().parse().unwrap();
        assert!((residue - 1.0 / 36.0).abs() < 1e-16);
    }
}

#[test]
fn verify_json_is_machine_readable() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "v.json",
        &["verify", "--quick", "--format", "json"],
    );
    let v: Value = serde_json::from_str(&text).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    assert_eq!(code == EXIT_OK, v["passed"].as_bool().unwrap());
    assert!(checks
        .iter()
        .all(|c| c["passed"].is_boolean() && c["name"].is_string()));
}

#[test]
fn error_classes_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(["qwalk", "teleport"]), EXIT_CONFIG);
    assert_eq!(
        run(["qwalk", "limit", "--sigma-plus", "north"]),
        EXIT_CONFIG
    );
    assert_eq!(run(["qwalk", "limit", "--init", "1,1"]), EXIT_CONFIG);
    assert_eq!(run(["qwalk", "stationary", "--j", "5"]), EXIT_CONFIG);
    let missing = dir.path().join("no/such/dir/out.csv");
    assert_eq!(
        run(["qwalk", "limit", "--output", missing.to_str().unwrap()]),
        EXIT_IO
    );
}

#[test]
fn nearly_normalized_input_is_renormalized() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_to(
        dir.path(),
        "n.csv",
        &["limit", "--init", "1.0000001,0", "--T", "1"],
    );
    assert_eq!(code, EXIT_OK);
    let m = read_csv(&dir.path().join("n.csv")).unwrap();
    assert!((m.get(0) - 2.0 / 9.0).abs() < 1e-16);
}
