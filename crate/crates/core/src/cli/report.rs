//! Report records written as JSON lines or tab-separated rows.

use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Jsonl,
}

/// A single-writer record stream. In TSV mode a header row precedes the
/// first record and every record whose key set differs from the last one.
pub struct Report<'a> {
    out: &'a mut dyn Write,
    format: Format,
    header: Option<Vec<String>>,
}

fn tsv_cell(v: &Value) -> String {
    let s = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    s.replace(['\t', '\n'], " ")
}

impl<'a> Report<'a> {
    pub fn new(out: &'a mut dyn Write, format: Format) -> Self {
        Report {
            out,
            format,
            header: None,
        }
    }

    /// Writes one record; `record` must be a JSON object.
    pub fn emit(&mut self, record: Value) -> Result<(), CliError> {
        let Value::Object(map) = record else {
            return Err(CliError::Output("records must be JSON objects".to_string()));
        };
        let line = match self.format {
            Format::Jsonl => Value::Object(map).to_string(),
            Format::Tsv => {
                let keys: Vec<String> = map.keys().cloned().collect();
                let mut line = String::new();
                if self.header.as_ref() != Some(&keys) {
                    line.push_str(&keys.join("\t"));
                    line.push('\n');
                    self.header = Some(keys);
                }
                let cells: Vec<String> = map.values().map(tsv_cell).collect();
                line.push_str(&cells.join("\t"));
                line
            }
        };
        writeln!(self.out, "{line}").map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn flush(&mut self) -> Result<(), CliError> {
        self.out.flush().map_err(|e| CliError::Output(e.to_string()))
    }
}
