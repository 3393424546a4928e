#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

pub fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema")
}

fn read_json(name: &str) -> Value {
    let path = schema_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Compiles `docs/schema/<command>.json` with the shared definitions registered.
pub fn validator(command: &str) -> jsonschema::Validator {
    let common = jsonschema::Resource::from_contents(read_json("common.json")).expect("common schema");
    jsonschema::options()
        .with_resource("json-schema:///common.json", common)
        .build(&read_json(&format!("{command}.json")))
        .unwrap_or_else(|e| panic!("schema {command}: {e}"))
}

/// Checks every stdout line against the command's schema; returns the errors.
pub fn schema_errors(command: &str, stdout: &str) -> Vec<String> {
    let v = validator(command);
    let mut errors = Vec::new();
    for (i, line) in stdout.lines().enumerate() {
        match serde_json::from_str::<Value>(line) {
            Ok(value) => errors.extend(v.iter_errors(&value).map(|e| format!("line {}: {e}", i + 1))),
            Err(e) => errors.push(format!("line {}: not JSON: {e}", i + 1)),
        }
    }
    errors
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn hallsod(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hallsod"))
        .args(args)
        .env_remove("HALLSOD_QUIVER_DIR")
        .output()
        .expect("spawn hallsod");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}
