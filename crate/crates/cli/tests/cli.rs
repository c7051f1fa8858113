use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn gnk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnk"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("failed to run gnk")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const INVERSE_Z: &str = r#"{
  "schema": "gnk.problem.v1",
  "circles": [{"center": [0, 0], "radius": 1}],
  "ell": 0,
  "lambdas": [0],
  "n": 64,
  "gamma": {"builtin": {"kind": "fourier", "cos": [[0, 1]]}}
}"#;

const MANUFACTURED: &str = r#"{
  "schema": "gnk.problem.v1",
  "circles": [{"center": [0, 0], "radius": 1}, {"center": [3, 0.5], "radius": 0.7}],
  "ell": 1,
  "lambdas": [0.3, 1.1],
  "n": 128,
  "gamma": {"builtin": {"kind": "manufactured", "seed": 3, "poles": 2}}
}"#;

#[test]
fn solve_then_eval_inverse_z() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "p.json", INVERSE_Z);
    let sol = dir.path().join("s.json");
    let out = gnk(&["solve", "-i", s(&problem), "-o", s(&sol)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let points = write(&dir, "pts.csv", "re,im\n2,0\n# comment\n0,-4\n");
    let values = dir.path().join("v.csv");
    let out = gnk(&["eval", "-i", s(&sol), "-p", s(&points), "-o", s(&values)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&values).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    // Psi(z) = 1/z
    assert!((rows[0][2] - 0.5).abs() < 1e-10 && rows[0][3].abs() < 1e-10);
    assert!(rows[1][2].abs() < 1e-10 && (rows[1][3] - 0.25).abs() < 1e-10);
}

#[test]
fn solution_output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "p.json", MANUFACTURED);
    let a = gnk(&["solve", "-i", s(&problem)]);
    let b = gnk(&["solve", "-i", s(&problem)]);
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema"], "gnk.solution.v1");
    assert_eq!(doc["grid"]["n"], 128);
    assert_eq!(doc["constants"]["a"][1].as_array().unwrap().len(), 2);
    assert!(doc.get("timing").is_none());

    let timed = gnk(&["solve", "-i", s(&problem), "--timing"]);
    let doc: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(doc["timing"]["solve_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn missing_field_is_named() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "p.json", &INVERSE_Z.replace("\"ell\": 0,", ""));
    let out = gnk(&["solve", "-i", s(&problem)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ell"));
}

#[test]
fn wrong_gamma_length_is_input_error() {
    let dir = TempDir::new().unwrap();
    let body = INVERSE_Z.replace(
        r#"{"builtin": {"kind": "fourier", "cos": [[0, 1]]}}"#,
        r#"{"samples": [[1, 2, 3]]}"#,
    );
    let problem = write(&dir, "p.json", &body);
    let out = gnk(&["solve", "-i", s(&problem)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma"));
}

#[test]
fn overlapping_circles_exit_2() {
    let dir = TempDir::new().unwrap();
    let body = MANUFACTURED.replace("[3, 0.5], \"radius\": 0.7", "[1.5, 0], \"radius\": 0.7");
    let problem = write(&dir, "p.json", &body);
    let out = gnk(&["solve", "-i", s(&problem)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("circles 1 and 2"));
}

#[test]
fn rejected_points_exit_4() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "p.json", INVERSE_Z);
    let sol = dir.path().join("s.json");
    assert!(gnk(&["solve", "-i", s(&problem), "-o", s(&sol)])
        .status
        .success());

    let values = dir.path().join("v.csv");
    let out = gnk(&[
        "eval",
        "-i",
        s(&sol),
        "--at",
        "2,0",
        "--at",
        "0.5,0",
        "-o",
        s(&values),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!values.exists());

    let out = gnk(&[
        "eval",
        "-i",
        s(&sol),
        "--at",
        "2,0",
        "--at",
        "0.5,0",
        "-o",
        s(&values),
        "--partial",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let text = fs::read_to_string(&values).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn empty_point_list_is_not_an_error() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "p.json", INVERSE_Z);
    let sol = dir.path().join("s.json");
    assert!(gnk(&["solve", "-i", s(&problem), "-o", s(&sol)])
        .status
        .success());
    let points = write(&dir, "pts.csv", "");
    let out = gnk(&["eval", "-i", s(&sol), "-p", s(&points)]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x,y,re,im");
}

#[test]
fn diagnose_reports_dimensions() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "p.json", MANUFACTURED);
    let out = gnk(&["diagnose", "-i", s(&problem)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("expected 6 / observed 6; I-N nonsingular"),
        "{text}"
    );
    assert!(text.contains("exact_error"));
    for n in ["32", "64", "128", "256"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(n)));
    }
}

#[test]
fn diagnose_warns_on_near_contact() {
    let dir = TempDir::new().unwrap();
    let body = MANUFACTURED.replace("[3, 0.5], \"radius\": 0.7", "[1.75, 0], \"radius\": 0.7");
    let problem = write(&dir, "p.json", &body);
    let out = gnk(&["diagnose", "-i", s(&problem)]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("circles 1 and 2 nearly touch"), "{text}");
}

#[test]
fn solution_round_trips_through_eval_json() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "p.json", MANUFACTURED);
    let sol = dir.path().join("s.json");
    assert!(gnk(&["solve", "-i", s(&problem), "-o", s(&sol)])
        .status
        .success());
    let values = dir.path().join("v.json");
    let out = gnk(&["eval", "-i", s(&sol), "--at", "-2.5,1", "-o", s(&values)]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&values).unwrap()).unwrap();
    assert_eq!(doc["schema"], "gnk.values.v1");
    assert_eq!(doc["values"].as_array().unwrap().len(), 1);
    assert!(doc["rejected"].as_array().unwrap().is_empty());
}
