use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn gotzmann_examples() {
    let (code, v) = json(&["gotzmann", "--p", "2t+2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["r"], 3);
    let (_, v) = json(&["gotzmann", "--p", "5"]);
    assert_eq!(v["outputs"]["r"], 5);
    let (code, v) = json(&["admissible", "--p", "2t-3"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["admissible"], false);
}

#[test]
fn enumeration_examples() {
    let count = |rp: &str| json(&["enum-borel", "--n", "2", "--p", "3", "--rprime", rp]).1["outputs"]["count"].clone();
    assert_eq!(count("3"), 2);
    assert_eq!(count("2"), 1);
    let (_, v) = json(&["enum-borel", "--n", "3", "--p", "2t+2", "--rprime", "2"]);
    let gens: Vec<Value> = v["outputs"]["ideals"].as_array().unwrap().iter().map(|i| i["generators"].clone()).collect();
    assert!(gens.contains(&serde_json::json!(["x3^2", "x3*x2", "x2^2", "x3*x1"])));
}

#[test]
fn membership_examples() {
    let two_lines = data("two_lines_borel.json");
    let (code, v) = json(&["membership", "--point", &two_lines, "--p", "2t+2", "--rprime", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["verdict"], "Member");
    let plane = data("plane.json");
    let (code, v) = json(&["membership", "--point", &plane, "--p", "2t+2", "--rprime", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["verdict"], "InComplement");
}

#[test]
fn equation_degrees_for_the_line_and_point() {
    let (code, v) = json(&["equations", "--n", "3", "--p", "2t+1", "--rprime", "2", "--s", "2"]);
    assert_eq!(code, 0);
    let o = &v["outputs"];
    for k in ["degree_a", "degree_b", "degree_c"] {
        assert!(o[k].as_u64().is_none_or(|d| d <= 3), "{k} = {}", o[k]);
    }
}

#[test]
fn equations_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eqs.json");
    let path = out.to_string_lossy().into_owned();
    let args = ["--out", path.as_str(), "equations", "--n", "2", "--p", "3", "--rprime", "2", "--s", "2"];
    assert_eq!(run(&args).status.code(), Some(0));
    let eqs: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let eqs = eqs.as_array().unwrap();
    assert!(!eqs.is_empty());
    for e in eqs {
        assert!(["A", "B", "C"].contains(&e["family"].as_str().unwrap()));
        assert!(e["degree"].as_u64().unwrap() >= 1);
        assert!(e["terms"][0]["vars"].is_array());
    }
}

#[test]
fn size_guard_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eqs.json").to_string_lossy().into_owned();
    let out = run(&["--out", path.as_str(), "equations", "--n", "3", "--p", "2t+1", "--rprime", "2", "--s", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gotzmann", "--p", "2t+"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["pluecker", "--point", "/nonexistent/point.json"]).status.code(), Some(1));
    assert_eq!(run(&["enum-borel", "--n", "3", "--p", "2t-3", "--rprime", "2"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let two_lines = data("two_lines_borel.json");
    let args = ["--json", "--seed", "7", "membership", "--point", &two_lines, "--p", "2t+2", "--rprime", "2"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let c = run(&["--json", "enum-borel", "--n", "3", "--p", "2t+1", "--rprime", "2"]).stdout;
    let d = run(&["--json", "enum-borel", "--n", "3", "--p", "2t+1", "--rprime", "2"]).stdout;
    assert_eq!(c, d);
}

#[test]
fn verify_paper_passes() {
    let (code, v) = json(&["verify-paper"]);
    assert_eq!(code, 0);
    let checks = v["outputs"]["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn pluecker_of_the_borel_point_has_one_coordinate() {
    let (code, v) = json(&["pluecker", "--point", &data("two_lines_borel.json")]);
    assert_eq!(code, 0);
    let text = v["outputs"].to_string();
    assert!(text.contains("D[5,6,7,8,9,10]"), "{text}");
}
