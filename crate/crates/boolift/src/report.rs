//! Machine-readable run reports. Every command produces one `Report`,
//! rendered as stable-schema JSON (`{command, inputs, results, warnings}`),
//! flattened CSV, or plain text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Output format selector shared by the command-line surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// One command's echo, inputs, measured results, and warnings. Maps are
/// ordered so renderings are deterministic.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn result(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.into(), value.into());
        self
    }

    /// Inserts any serializable result (structs become JSON objects).
    pub fn result_object(&mut self, key: impl Into<String>, value: &impl Serialize) -> &mut Self {
        self.results.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) -> &mut Self {
        self.warnings.push(message.into());
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `key,value` rows; nested results flatten to dotted keys and array
    /// elements to numeric path segments.
    pub fn to_csv(&self) -> String {
        let mut rows = vec![("command".to_string(), Value::String(self.command.clone()))];
        for (k, v) in &self.inputs {
            flatten(&format!("inputs.{k}"), v, &mut rows);
        }
        for (k, v) in &self.results {
            flatten(&format!("results.{k}"), v, &mut rows);
        }
        for (i, w) in self.warnings.iter().enumerate() {
            rows.push((format!("warnings.{i}"), Value::String(w.clone())));
        }
        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            let _ = writeln!(out, "{},{}", csv_cell(&k), csv_cell(&scalar_text(&v)));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {}", scalar_text(v));
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "{k} = {}", scalar_text(v));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

/// Depth-first flattening of a JSON value into `(dotted key, leaf)` rows.
fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, Value)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, rows);
            }
        }
        leaf => rows.push((prefix.to_string(), leaf.clone())),
    }
}

/// Scalar leaves print bare (strings unquoted); compound values fall back
/// to compact JSON.
fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
