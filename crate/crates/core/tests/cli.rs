//! The `sl2r` binary: output determinism and exit codes.

use std::process::{Command, Output};

fn sl2r(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2r"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "translation-anglesum", "--n", "50", "--seed", "9", "--format", "json"];
    let a = sl2r(&args);
    let b = sl2r(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["meta"]["seed"], 9);
    assert_eq!(v["rows"][0]["passed"], true);
}

#[test]
fn table_csv_layout() {
    let out = sl2r(&["table4", "--z3", "0.1,0.3333333333333333"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("z3,alpha23,d_A2A3,omega2,omega3,sum"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[5], "2.987201463");
    assert_eq!(sl2r(&["table4", "--z3", "0.1"]).stdout, sl2r(&["table4", "--z3", "0.1"]).stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("sl2r-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t3.json");
    let out = sl2r(&["table3", "--y2", "0.5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((v["rows"][0]["sum"].as_f64().unwrap() - 3.1806).abs() < 5e-4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_arguments_exit_4() {
    assert_eq!(sl2r(&["table3", "--y2", "1.5"]).status.code(), Some(4));
    assert_eq!(sl2r(&["verify", "--suite", "nope"]).status.code(), Some(4));
    assert_eq!(sl2r(&["geodesic", "--to", "0,2,0"]).status.code(), Some(4));
    assert_eq!(sl2r(&["find-pi", "--tol", "0"]).status.code(), Some(4));
    assert_eq!(sl2r(&["frobnicate"]).status.code(), Some(4));
}

#[test]
fn failed_precondition_and_help() {
    // both endpoints fibre-like: the bisection precondition fails
    let out = sl2r(&["find-pi", "--a3h", "0.3,0,0"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(sl2r(&["--help"]).status.code(), Some(0));
    assert_eq!(sl2r(&["--version"]).status.code(), Some(0));
}

#[test]
fn single_computations() {
    let out = sl2r(&["geodesic", "--to", "0,0.5,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.5493061443"), "{text}");

    let out = sl2r(&["triangle", "--a2", "0.25,0.25,0", "--a3", "0.1,0.1,0.2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let translation = text.lines().find(|l| l.starts_with("translation")).unwrap();
    assert!(translation.ends_with(",true"), "{translation}");

    let out = sl2r(&["find-pi"]);
    assert_eq!(out.status.code(), Some(0));
    let out = sl2r(&["sweep", "--family", "hyperbolic", "--n", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 10);
}
