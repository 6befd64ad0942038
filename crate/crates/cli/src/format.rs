//! Reading and writing problem files.
//!
//! Two formats are supported:
//!
//! * **CSV** — the first row lists journal names; data row `i`, column `j`
//!   holds the citations journal `i` received from journal `j`, written as
//!   an integer, a decimal, or a fraction like `1/2`.
//! * **structured** — a JSON document `{"journals": [...], "citations":
//!   [[...]]}` whose cells are numbers or fraction strings.
//!
//! Cells are exact rationals in both directions: parse → serialize → parse
//! is the identity on values.

use jrank_core::rational::{format_rational, parse_rational};
use jrank_core::{Problem, Rational};
use serde_json::{json, Value};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Structured,
}

/// Picks a format from the file extension: `.json` means structured,
/// anything else CSV.
pub fn detect_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Structured,
        _ => Format::Csv,
    }
}

/// Loads a problem file; `format: None` auto-detects from the extension.
pub fn read_problem(path: &Path, format: Option<Format>) -> Result<Problem, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let format = format.unwrap_or_else(|| detect_format(path));
    let parsed = match format {
        Format::Csv => parse_csv(&text),
        Format::Structured => parse_structured(&text),
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_csv(text: &str) -> Result<Problem, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut journals: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("malformed CSV: {e}"))?;
        if line == 0 {
            journals = record.iter().map(|s| s.to_string()).collect();
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(col, cell)| {
                parse_rational(cell).map_err(|_| {
                    format!(
                        "citation row {}, column {}: cannot read {:?} as a number or fraction",
                        line,
                        col + 1,
                        cell
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if journals.is_empty() {
        return Err("empty file: expected a row of journal names".into());
    }
    Problem::new(journals, rows).map_err(|e| e.to_string())
}

pub fn parse_structured(text: &str) -> Result<Problem, String> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| format!("malformed structured document: {e}"))?;
    problem_from_value(&value)
}

/// Builds a problem from an already-parsed structured document; also used
/// to recover the problem embedded in a report during replay.
pub fn problem_from_value(value: &Value) -> Result<Problem, String> {
    let Value::Object(map) = value else {
        return Err("structured document must be an object".into());
    };
    for key in map.keys() {
        if key != "journals" && key != "citations" {
            return Err(format!(
                "unknown field {key:?} (expected \"journals\" and \"citations\")"
            ));
        }
    }
    let journals = map
        .get("journals")
        .ok_or("missing \"journals\" field")?
        .as_array()
        .ok_or("\"journals\" must be an array of names")?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| "journal names must be strings".to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let row_values = map
        .get("citations")
        .ok_or("missing \"citations\" field")?
        .as_array()
        .ok_or("\"citations\" must be an array of rows")?;
    let mut rows = Vec::new();
    for (i, row_value) in row_values.iter().enumerate() {
        let cells = row_value
            .as_array()
            .ok_or_else(|| format!("citation row {} must be an array", i + 1))?;
        let row = cells
            .iter()
            .enumerate()
            .map(|(j, cell)| {
                parse_cell(cell)
                    .map_err(|e| format!("citation row {}, column {}: {e}", i + 1, j + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Problem::new(journals, rows).map_err(|e| e.to_string())
}

fn parse_cell(cell: &Value) -> Result<Rational, String> {
    let text = match cell {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(format!("expected a number or fraction string, got {other}")),
    };
    parse_rational(&text).map_err(|_| format!("cannot read {text:?} as a number or fraction"))
}

/// Serializes a problem as CSV, the same shape `parse_csv` reads.
pub fn problem_to_csv(p: &Problem) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(p.journals()).expect("in-memory write");
    for i in 0..p.n() {
        let cells: Vec<String> = p.row(i).iter().map(|c| format_rational(*c)).collect();
        writer.write_record(&cells).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// Serializes a problem as a structured document. Cells are emitted as
/// exact strings so that values survive a round trip unchanged.
pub fn problem_to_json(p: &Problem) -> Value {
    let citations: Vec<Vec<String>> = (0..p.n())
        .map(|i| p.row(i).iter().map(|c| format_rational(*c)).collect())
        .collect();
    json!({ "journals": p.journals(), "citations": citations })
}
