//! The structured record every subcommand emits.
//!
//! One invocation produces one record: the command name, the parameters
//! it resolved (defaults filled in), a homogeneous list of rows, and run
//! metadata. JSON rendering serializes the whole record; CSV rendering
//! serializes the rows only, with the header taken from the first row.
//! Key order is insertion order in both formats, so the two encodings
//! carry identical row data.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

/// Version of the record layout, mirrored by `schemas/output.schema.json`
/// and `docs/csv_columns.md`. Bumped on any breaking column change.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Full record as pretty-printed JSON.
    Json,
    /// Rows only, as CSV with a header line.
    Csv,
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: Map<String, Value>,
    pub rows: Vec<Map<String, Value>>,
    pub metadata: Map<String, Value>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        let mut metadata = Map::new();
        metadata.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        metadata.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        OutputRecord {
            command: command.to_string(),
            params: Map::new(),
            rows: Vec::new(),
            metadata,
        }
    }

    pub fn param(&mut self, key: &str, value: Value) {
        self.params.insert(key.to_string(), value);
    }

    pub fn meta(&mut self, key: &str, value: Value) {
        self.metadata.insert(key.to_string(), value);
    }

    pub fn push_row(&mut self, row: Map<String, Value>) {
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text =
                    serde_json::to_string_pretty(self).expect("record serializes to JSON");
                text.push('\n');
                text
            }
            Format::Csv => render_csv(&self.rows),
        }
    }
}

/// A finished record plus whether the run counts as verified. `ok` is
/// false only for failed cross-checks; it maps to exit code 1.
pub struct Outcome {
    pub record: OutputRecord,
    pub ok: bool,
}

impl From<OutputRecord> for Outcome {
    fn from(record: OutputRecord) -> Self {
        Outcome { record, ok: true }
    }
}

/// Builds an ordered row from key-value pairs.
pub fn row(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs
        .into_iter()
        .map(|(key, value)| (key.to_string(), value))
        .collect()
}

/// A float as a JSON number when finite. JSON has no literals for the
/// non-finite values, so those become the strings "inf", "-inf", "nan";
/// CSV cells use the same spellings.
pub fn float(value: f64) -> Value {
    if value.is_finite() {
        Value::from(value)
    } else if value.is_nan() {
        Value::from("nan")
    } else if value > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

fn render_csv(rows: &[Map<String, Value>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        let header: Vec<&str> = first.keys().map(String::as_str).collect();
        writer.write_record(&header).expect("csv header");
        for row in rows {
            let cells: Vec<String> = header.iter().map(|key| cell(row.get(*key))).collect();
            writer.write_record(&cells).expect("csv row");
        }
    }
    let bytes = writer.into_inner().expect("csv buffer");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

/// CSV spelling of one row value. `Number::to_string` goes through the
/// shortest-round-trip formatter, matching the JSON digits exactly.
fn cell(value: Option<&Value>) -> String {
    match value {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(text)) => text.clone(),
        Some(Value::Bool(flag)) => flag.to_string(),
        Some(Value::Number(number)) => number.to_string(),
        Some(other) => other.to_string(),
    }
}
