mod support;

use std::process::Command;

use serde_json::Value;
use support::{hallsod, schema_errors};

fn valid(command: &str, args: &[&str]) -> String {
    let run = hallsod(args);
    assert_eq!(run.code, 0, "{args:?}: {}", run.stderr);
    let errs = schema_errors(command, &run.stdout);
    assert!(errs.is_empty(), "{args:?}: {errs:?}");
    assert!(!run.stdout.is_empty(), "{args:?}: no output");
    run.stdout
}

fn json(line: &str) -> Value {
    serde_json::from_str(line).unwrap()
}

#[test]
fn every_command_matches_its_schema() {
    valid("r-invariant", &["r-invariant", "--d", "3", "--weight", "4,0,-4"]);
    valid("r-invariant", &["r-invariant", "--d", "2", "--weight", "1/2,-1/2"]);
    valid("decompose", &["decompose", "--d", "3", "--weight", "5,0,-5", "--delta", "1/3"]);
    valid("windows", &["windows", "--d", "3", "--w", "-2"]);
    for set in ["s", "t", "u", "v"] {
        valid("index-sets", &["index-sets", "--set", set, "--d", "2", "--w", "0", "--slope-bound", "3"]);
    }
    valid("compare", &["compare", "--a", "[[1,5],[1,-5]]", "--b", "[[2,0]]"]);
    valid("compare", &["compare", "--index", "v", "--a", "[[1,1],[1,-1]]", "--b", "[[1,3],[1,-3]]"]);
    valid("pbw-table", &["pbw-table", "--dmax", "2", "--wmax", "2", "--format", "json"]);
    valid("verify-bijection", &["verify-bijection", "--d", "3", "--w", "1", "--bound", "6"]);
    valid("shuffle", &["shuffle", "mul", "[1] z1", "[1] 1"]);
    valid("shuffle", &["shuffle", "eval", "--mode", "formal", "--D", "2", "--K", "5", "--z", "3,7", "[1] 1", "[1] z1"]);
    valid("shuffle", &["shuffle", "equals", "z1*z2", "z2*z1"]);
    valid("omega-shift", &["omega-shift", "--a", "[[1,4],[1,-4]]", "--inverse"]);
}

#[test]
fn decompose_example() {
    let out = valid("decompose", &["decompose", "--d", "2", "--weight", "5,-5"]);
    let v = json(&out);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
    assert_eq!(v["nodes"][0]["r"], "11/6");
    assert_eq!(v["nodes"][0]["N"], serde_json::json!(["-3", "3"]));
    assert_eq!(v["psi"], serde_json::json!(["0", "0"]));
}

#[test]
fn windows_tsv() {
    let run = hallsod(&["windows", "--d", "2", "--w", "4", "--format", "tsv"]);
    assert_eq!(run.stdout, "2\t2\n3\t1\n");
}

#[test]
fn omega_round_trip() {
    let out = valid("omega-shift", &["omega-shift", "--a", "[[1,5],[1,-5]]"]);
    let shifted = json(&out)["shifted"].to_string();
    let back = valid("omega-shift", &["omega-shift", "--inverse", "--a", &shifted]);
    assert_eq!(json(&back)["shifted"], serde_json::json!([[1, 5], [1, -5]]));
}

#[test]
fn compare_outside_s_is_a_domain_error() {
    let run = hallsod(&["compare", "--a", "[[1,1],[1,-1]]", "--b", "[[2,0]]"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("not in S"), "{}", run.stderr);
    let run = hallsod(&["compare", "--a", "[[2,0]]", "--b", "[[2,2]]"]);
    assert_eq!(run.code, 1);
}

#[test]
fn tsv_only_where_supported() {
    let run = hallsod(&["decompose", "--d", "1", "--weight", "3", "--format", "tsv"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.is_empty());
}

#[test]
fn probabilistic_equality_is_seeded() {
    let args = ["--seed", "7", "shuffle", "equals", "--strategy", "probabilistic", "--points", "8", "[2] z1+z2", "[2] z2+z1"];
    let a = hallsod(&args);
    let b = hallsod(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, "{\"equal\":true}\n");
    let c = hallsod(&["shuffle", "equals", "--strategy", "probabilistic", "[2] z1+z2", "[2] 2*z1+2*z2"]);
    assert_eq!(c.stdout, "{\"equal\":false}\n");
}

#[test]
fn quiver_from_directory_and_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loops3.json");
    std::fs::write(&path, r#"{"vertices":["v"],"edges":[[0,0],[0,0],[0,0]],"cut":[2]}"#).unwrap();
    let by_path = hallsod(&["r-invariant", "--quiver", path.to_str().unwrap(), "--d", "2", "--weight", "5,-5"]);
    assert_eq!(by_path.stdout, "{\"r\":\"5/3\",\"lambda\":[-1,1]}\n");
    let out = Command::new(env!("CARGO_BIN_EXE_hallsod"))
        .args(["r-invariant", "--quiver", "loops3", "--d", "2", "--weight", "5,-5"])
        .env("HALLSOD_QUIVER_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), by_path.stdout);
}

#[test]
fn bad_input_never_panics() {
    for args in [
        &["windows", "--d", "0", "--w", "0"][..],
        &["windows", "--d", "2", "--w", "0", "--delta", "1/0"],
        &["decompose", "--d", "2", "--weight", "1,2"],
        &["index-sets", "--set", "s", "--d", "2", "--w", "0", "--slope-bound", "-1"],
        &["compare", "--a", "not json", "--b", "[[2,0]]"],
        &["shuffle", "mul", "[2] z1", "[1] 1"],
        &["shuffle", "eval", "[1] z1 +", "--z", "1", "--q1", "2", "--q2", "3"],
        &["omega-shift", "--a", "[[0,1]]"],
        &["verify-bijection", "--d", "2", "--w", "0", "--bound", "-1"],
        &["r-invariant", "--d", "2,1", "--weight", "1,1;1"],
    ] {
        let run = hallsod(args);
        assert_eq!(run.code, 1, "{args:?}: {}{}", run.stdout, run.stderr);
        assert!(run.stderr.starts_with("error"), "{args:?}: {}", run.stderr);
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(hallsod(&["--help"]).code, 0);
    assert_eq!(hallsod(&["--version"]).code, 0);
    assert_eq!(hallsod(&["windows", "--help"]).code, 0);
}
