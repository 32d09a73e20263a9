use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const COMPLETE_4: &str = "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const PATH_4: &str = "# linear cluster\n4\n0 1\n1 2\n2 3\n";

fn stabent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bound_on_graph_files() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (
        write(&dir, "a.graph", COMPLETE_4),
        write(&dir, "b.graph", PATH_4),
    );
    let v = json_of(&stabent(&["bound", s(&a), s(&b)]));
    assert_eq!(v["bound_bits"], 2.0);
    assert_eq!(v["method"], "recurrence");
    assert_eq!(v["agreement"], true);
    assert_eq!(v["r_squared"], "1/2^4");
}

#[test]
fn bound_on_generator_files() {
    let dir = TempDir::new().unwrap();
    let (x, z) = (
        write(&dir, "x.txt", "+X\n"),
        write(&dir, "z.txt", "# Z basis\n+Z\n"),
    );
    let v = json_of(&stabent(&["bound", s(&x), s(&z)]));
    assert_eq!(v["bound_bits"], 0.5);
    assert_eq!(v["method"], "intersection");
    assert_eq!(v["agreement"], true);
    let same = json_of(&stabent(&["bound", s(&x), s(&x)]));
    assert_eq!(same["bound_bits"], 0.0);
    assert_eq!(same["c"], 1);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", "+XX\n+ZZ\n");
    let bad = write(&dir, "bad.txt", "+XX\n\n+ZQ\n");
    let out = stabent(&["bound", s(&good), s(&bad)]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    let one = write(&dir, "one.txt", "+X\n");
    let out = stabent(&["bound", s(&good), s(&one)]);
    assert!(!out.status.success());
}

#[test]
fn tightness_reports_every_state() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (
        write(&dir, "a.graph", COMPLETE_4),
        write(&dir, "b.graph", PATH_4),
    );
    let v = json_of(&stabent(&["tightness", s(&a), s(&b)]));
    assert_eq!(v["tight"], true);
    assert_eq!(v["all_attain"], true);
    assert_eq!(v["states"].as_array().unwrap().len(), 32);
    let out = stabent(&["tightness", s(&a), s(&b), "--entropy", "min"]);
    assert!(!out.status.success());
}

#[test]
fn matching_writes_pairs() {
    let dir = TempDir::new().unwrap();
    let (x, z) = (write(&dir, "x.txt", "+X\n"), write(&dir, "z.txt", "+Z\n"));
    let csv = dir.path().join("pairs.csv");
    let args = [
        "matching",
        s(&x),
        s(&z),
        "--entropy",
        "shannon",
        "--entropy",
        "tsallis",
        "--q",
        "2",
    ];
    let v = json_of(&stabent(
        &[&args[..], &["--samples", "50", "--out", s(&csv)]].concat(),
    ));
    assert_eq!(v["size"], 2);
    assert_eq!(v["relations"][0]["bound"], 0.5);
    assert_eq!(v["relations"][1]["bound"], 0.25);
    assert_eq!(fs::read_to_string(&csv).unwrap(), "k,l\n0,1\n");
    let out = stabent(&["matching", s(&x), s(&x)]);
    assert!(!out.status.success());
}

#[test]
fn boundary_curves() {
    let out = stabent(&[
        "boundary",
        "--entropy",
        "tsallis",
        "--q",
        "2",
        "--samples",
        "11",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 40);
    for row in rows {
        let f: Vec<f64> = row.split(',').take(2).map(|v| v.parse().unwrap()).collect();
        assert!((f[0] * f[0] + f[1] * f[1] - 1.0).abs() < 1e-10, "{row}");
    }
    assert!(
        !stabent(&["boundary", "--entropy", "tsallis", "--q", "2.5"])
            .status
            .success()
    );
    assert!(!stabent(&["boundary", "--entropy", "tsallis"])
        .status
        .success());
    assert!(!stabent(&["boundary", "--entropy", "min"]).status.success());
}

#[test]
fn verify_suites() {
    let v = json_of(&stabent(&["verify", "overlap", "--seed", "42"]));
    assert_eq!(v["passed"], true);
    let v = json_of(&stabent(&["verify", "recurrence"]));
    assert_eq!(v["passed"], true);
    let out = stabent(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "matching", "--samples", "20", "--seed", "7"];
    let a = stabent(&args);
    let b = stabent(&[&args[..], &["--jobs", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn amplitude_table() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "edge.graph", "2\n0 1\n");
    let out = stabent(&["amplitudes", s(&g)]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "y,numerator,log2_denominator,sign\n00,1,1,1\n10,1,1,1\n01,1,1,1\n11,1,1,-1\n"
    );
}
