//! Report assembly and rendering. Every subcommand produces one `Report`;
//! rendering is deterministic so identical invocations emit identical bytes.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Ordered key/value row; insertion order drives text and CSV layout (JSON
/// objects are key-sorted by construction).
pub type Row = Vec<(String, Value)>;

pub fn kv(key: &str, value: impl Into<Value>) -> (String, Value) {
    (key.to_string(), value.into())
}

/// i128 values that fit i64 become JSON numbers, anything wider a string.
pub fn big(value: i128) -> Value {
    match i64::try_from(value) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(value.to_string()),
    }
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Row,
    pub results: Vec<Row>,
    pub mismatches: Vec<Row>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Vec::new(),
            results: Vec::new(),
            mismatches: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        let to_obj = |row: &Row| Value::Object(row.iter().cloned().collect::<Map<_, _>>());
        let doc = json!({
            "command": self.command,
            "inputs": to_obj(&self.inputs),
            "results": self.results.iter().map(to_obj).collect::<Vec<_>>(),
            "mismatches": self.mismatches.iter().map(to_obj).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report is valid JSON");
        s.push('\n');
        s
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if !self.inputs.is_empty() {
            out.push_str(&format!("inputs: {}\n", row_line(&self.inputs)));
        }
        out.push_str("results:\n");
        for row in &self.results {
            out.push_str(&format!("  {}\n", row_line(row)));
        }
        if !self.mismatches.is_empty() {
            out.push_str("mismatches:\n");
            for row in &self.mismatches {
                out.push_str(&format!("  {}\n", row_line(row)));
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        // Header: keys in first-appearance order across all result rows.
        let mut header: Vec<&str> = Vec::new();
        for row in &self.results {
            for (k, _) in row {
                if !header.iter().any(|h| h == k) {
                    header.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("csv header");
        for row in &self.results {
            let record: Vec<String> = header
                .iter()
                .map(|&h| {
                    row.iter()
                        .find(|(k, _)| k == h)
                        .map(|(_, v)| scalar(v))
                        .unwrap_or_default()
                })
                .collect();
            w.write_record(&record).expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv buffer")).expect("csv is utf-8")
    }
}

fn row_line(row: &Row) -> String {
    row.iter()
        .map(|(k, v)| format!("{k}={}", scalar(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Flat text form of a JSON value for text/CSV output.
fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(scalar)
            .collect::<Vec<_>>()
            .join(";"),
        other => other.to_string(),
    }
}
