//! Run records: the JSON/CSV envelope around every command's results.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Result rows with a fixed column order.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn objects(&self) -> Vec<Map<String, Value>> {
        self.rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().cloned())
                    .collect()
            })
            .collect()
    }

    /// CSV with a header line; `summary` entries precede it as `# key: value`
    /// comment lines.
    pub fn to_csv(&self, summary: Option<&Value>) -> String {
        let mut out = String::new();
        if let Some(Value::Object(map)) = summary {
            for (k, v) in map {
                let _ = writeln!(out, "# {k}: {}", compact(v));
            }
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// Everything needed to replay a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run_id: Option<String>,
    pub command: String,
    pub version: String,
    pub params: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    pub results: Vec<Map<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunRecord {
    /// The record without timing and identity fields, which differ between
    /// otherwise identical runs.
    pub fn reproducible(&self) -> RunRecord {
        RunRecord {
            run_id: None,
            wall_time_ms: None,
            ..self.clone()
        }
    }
}

/// SHA-256 over the command, canonical parameters and seed.
pub fn parameter_hash(command: &str, params: &Map<String, Value>, seed: Option<u64>) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    h.update(Value::Object(params.clone()).to_string().as_bytes());
    h.update([0]);
    h.update(seed.map_or_else(String::new, |s| s.to_string()).as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// `<UTC timestamp>-<first 12 hex digits of the parameter hash>`.
pub fn run_id(command: &str, params: &Map<String, Value>, seed: Option<u64>) -> String {
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S%3fZ");
    format!("{stamp}-{}", &parameter_hash(command, params, seed)[..12])
}
