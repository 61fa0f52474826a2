//! Output formatting: flat rows plus a metadata preamble, rendered as CSV
//! (`# key=value` comment lines, then `axis,measure,value`) or as a single
//! JSON object. Row bodies are deterministic; only metadata may carry
//! run-specific values such as timestamps.

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One output record: the swept axis value, a measure label, and the value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub axis: f64,
    pub measure: String,
    pub value: f64,
}

/// A complete result set ready for rendering.
#[derive(Clone, Debug)]
pub struct Emission {
    /// Ordered `key=value` metadata for the preamble.
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<Row>,
}

/// Render 17 significant digits, enough to round-trip any f64.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl Emission {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (key, value) in &self.metadata {
            s.push_str(&format!("# {key}={value}\n"));
        }
        s.push_str("axis,measure,value\n");
        for row in &self.rows {
            s.push_str(&format!(
                "{},{},{}\n",
                fmt_f64(row.axis),
                row.measure,
                fmt_f64(row.value)
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let metadata: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let doc = serde_json::json!({
            "metadata": metadata,
            "rows": self.rows,
        });
        // Serialization of this shape cannot fail.
        let mut text = serde_json::to_string_pretty(&doc).expect("json encoding");
        text.push('\n');
        text
    }
}

/// Output format selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Write the emission to `out` (or stdout when absent) in the chosen format.
pub fn emit(emission: &Emission, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Csv => emission.to_csv(),
        Format::Json => emission.to_json(),
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|()| lock.flush())
                .map_err(|e| CliError::input(format!("cannot write to stdout: {e}")))
        }
    }
}
