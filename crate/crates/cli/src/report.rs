//! Run reports: one JSON object per invocation, or the same values as `key: value` lines.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Fail,
    Budget,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Budget => 2,
        }
    }
}

/// What a subcommand produced, before timing and the command echo are attached.
pub struct Outcome {
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub status: Status,
    /// Work counter that depends on scheduling; reported under `timing`.
    pub nodes_explored: Option<u64>,
    /// Replaces the generic `key: value` body in text mode.
    pub table: Option<String>,
}

impl Outcome {
    pub fn new(inputs: Map<String, Value>, outputs: Map<String, Value>) -> Outcome {
        Outcome { inputs, outputs, status: Status::Ok, nodes_explored: None, table: None }
    }

    pub fn with_status(mut self, status: Status) -> Outcome {
        self.status = status;
        self
    }
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
}

#[derive(Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub command: Vec<String>,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub status: Status,
    pub timing: Timing,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, table: Option<&str>) -> String {
        let mut out = String::new();
        let status = serde_json::to_value(self.status).expect("status serializes");
        writeln!(out, "{} {}: {}", self.tool, self.subcommand, status.as_str().unwrap_or("?")).unwrap();
        flatten(&mut out, "", &Value::Object(self.inputs.clone()));
        match table {
            Some(t) => out.push_str(t),
            None => flatten(&mut out, "", &Value::Object(self.outputs.clone())),
        }
        writeln!(out, "elapsed_ms: {:.1}", self.timing.elapsed_ms).unwrap();
        if let Some(n) = self.timing.nodes_explored {
            writeln!(out, "nodes_explored: {n}").unwrap();
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                let name = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten(out, &name, value);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            writeln!(out, "{prefix}: [{}]", parts.join(", ")).unwrap();
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(out, &format!("{prefix}[{i}]"), item);
            }
        }
        other => writeln!(out, "{prefix}: {}", scalar(other)).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_flattens_nested_values() {
        let mut out = String::new();
        flatten(&mut out, "", &json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": null}]}));
        assert_eq!(out, "a: 1\nb.c: [1, 2]\nd[0].e: -\n");
    }
}
