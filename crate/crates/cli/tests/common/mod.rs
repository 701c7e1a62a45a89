#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

/// Runs the binary in `dir` with `GDOM_OUT_DIR` unset.
pub fn gdom(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gdom"))
        .args(args)
        .current_dir(dir)
        .env_remove("GDOM_OUT_DIR")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../../schema/run-report.schema.json");
    let schema: Value = serde_json::from_str(text).expect("schema is JSON");
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

pub fn assert_valid(schema: &jsonschema::JSONSchema, report: &Value) {
    if let Err(errors) = schema.validate(report) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("report violates schema: {msgs:?}\n{report:#}");
    }
}
