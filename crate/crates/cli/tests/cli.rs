use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_chordal-locc"));
    c.env("RUST_LOG", "warn");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn generate(dir: &Path, family: &str) -> String {
    let path = dir.join(format!("{}.json", family.replace([':', ','], "_")));
    let out = run(&["generate", family, "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "generate {family}: {}", String::from_utf8_lossy(&out.stderr));
    path.to_str().unwrap().to_string()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn decide(input: &str, direction: &str, dir: &Path) -> (i32, Value) {
    let out_path = dir.join("verdict.json");
    let out = run(&["decide", "-i", input, "-o", out_path.to_str().unwrap(), "--direction", direction]);
    (code(&out), json_file(&out_path))
}

#[test]
fn first_example_is_distinguishable() {
    let tmp = TempDir::new().unwrap();
    let input = generate(tmp.path(), "example1");
    let (c, v) = decide(&input, "alice-first", tmp.path());
    assert_eq!(c, 0);
    assert_eq!(v["status"], "distinguishable");
    assert_eq!(v["simulation"]["perfect"], true);
}

#[test]
fn domino_basis_exits_ten() {
    let tmp = TempDir::new().unwrap();
    let input = generate(tmp.path(), "bennett");
    let (c, v) = decide(&input, "alice-first", tmp.path());
    assert_eq!(c, 10);
    assert_eq!(v["certificate"]["kind"], "MinDimNoSimplicial");
}

#[test]
fn empty_state_list_is_an_error() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("empty.json");
    fs::write(&path, r#"{"states": []}"#).unwrap();
    assert_eq!(code(&run(&["analyze", "-i", path.to_str().unwrap()])), 1);
    fs::write(&path, "not json").unwrap();
    assert_eq!(code(&run(&["decide", "-i", path.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["generate", "bullseye:2"])), 1);
}

#[test]
fn generated_families_reproduce_their_verdicts() {
    let table = [
        ("example1", "alice-first", "ChordalAliceGraph"),
        ("example2", "alice-first", "NonChordalSandwichAtMinDim"),
        ("example3", "alice-first", "FeasibleDecomposition"),
        ("example4", "alice-first", "ChordalAliceGraph"),
        ("min-dim-c5", "alice-first", "ChordalAliceGraph"),
        ("bennett", "alice-first", "MinDimNoSimplicial"),
        ("bennett", "bob-first", "MinDimNoSimplicial"),
        ("bennett-subset:2,4,6,8,9", "alice-first", "NonChordalSandwichAtMinDim"),
        ("bennett-subset:2,4,6,8,9", "bob-first", "ChordalAliceGraph"),
        ("bennett-subset:2,6,7,8,9", "alice-first", "MinDimNoSimplicial"),
        ("bennett-subset:2,6,7,8,9", "bob-first", "ChordalAliceGraph"),
        ("tiles", "alice-first", "AlphaLessThanChi"),
        ("bullseye:4", "alice-first", "MinDimNoSimplicial"),
        ("bullseye-recursive:5", "alice-first", "MinDimNoSimplicial"),
    ];
    let tmp = TempDir::new().unwrap();
    for (family, direction, kind) in table {
        let input = generate(tmp.path(), family);
        let (c, v) = decide(&input, direction, tmp.path());
        assert_eq!(v["certificate"]["kind"], kind, "{family} {direction}");
        let expected = if v["status"] == "distinguishable" { 0 } else { 10 };
        assert_eq!(c, expected, "{family} {direction}");
    }
}

#[test]
fn saved_protocol_replays_identically() {
    let tmp = TempDir::new().unwrap();
    for (family, direction) in [("example3", "alice-first"), ("bennett-subset:2,4,6,8,9", "bob-first")] {
        let input = generate(tmp.path(), family);
        let saved = tmp.path().join("protocol.json");
        let out = run(&["protocol", "-i", &input, "-o", saved.to_str().unwrap(), "--direction", direction]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let first = json_file(&saved);
        let replayed = tmp.path().join("replay.json");
        let out = run(&["protocol", "-i", &input, "--replay", saved.to_str().unwrap(), "-o", replayed.to_str().unwrap(), "--direction", direction]);
        assert_eq!(code(&out), 0);
        let second = json_file(&replayed);
        let a = first["simulation"]["per_state_success"].as_array().unwrap();
        let b = second["simulation"]["per_state_success"].as_array().unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x.as_f64().unwrap() - y.as_f64().unwrap()).abs() <= 1e-12);
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    let tmp = TempDir::new().unwrap();
    let input = generate(tmp.path(), "cycle-rep:6");
    let again = run(&["generate", "cycle-rep:6"]);
    assert_eq!(fs::read(&input).unwrap(), again.stdout);
    let a = run(&["decide", "-i", &input]);
    let b = run(&["decide", "-i", &input]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_and_export_dot() {
    let tmp = TempDir::new().unwrap();
    let input = generate(tmp.path(), "example2");
    let out = run(&["analyze", "-i", &input]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["alice"]["chordality"]["chordal"], false);
    assert_eq!(report["alice"]["chordality"]["chordless_cycle"].as_array().unwrap().len(), 4);

    let dot = run(&["export-dot", "-i", &input]);
    assert_eq!(code(&dot), 0);
    let text = String::from_utf8(dot.stdout).unwrap();
    for name in ["G_A", "G_B", "complement_G_B"] {
        assert!(text.contains(&format!("graph {name}")), "{text}");
    }

    let graph = tmp.path().join("c5.json");
    fs::write(&graph, r#"{"n": 5, "edges": [[1,2],[2,3],[3,4],[4,5],[5,1]]}"#).unwrap();
    let out = run(&["analyze", "-i", graph.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.to_string().contains("\"chi\":3"), "{report}");
}

#[test]
fn decompose_reports_a_pattern() {
    let tmp = TempDir::new().unwrap();
    let input = generate(tmp.path(), "example1");
    let out = run(&["decompose", "-i", &input]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["method"], "chordal");
    let input = generate(tmp.path(), "example3");
    let v: Value = serde_json::from_slice(&run(&["decompose", "-i", &input]).stdout).unwrap();
    assert_eq!(v["method"], "feasibility");
    assert!(v["decomposition"].is_object());
}
