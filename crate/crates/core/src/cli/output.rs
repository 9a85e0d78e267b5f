//! Table, CSV and JSON rendering.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::verify::{Quantity, Summary, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Cell {
    fn table(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => if *b { "PASS" } else { "FAIL" }.to_string(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Num(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn write_table(out: &mut dyn Write, t: &Table) -> std::io::Result<()> {
    let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Cell::table).collect()).collect();
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
    for r in &cells {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |vals: Vec<&str>| -> String {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}", w = *w))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(t.columns.clone()))?;
    writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
    for r in &cells {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn write_csv(out: &mut dyn Write, t: &Table) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&t.columns)?;
    for r in &t.rows {
        w.write_record(r.iter().map(Cell::csv))?;
    }
    w.flush()?;
    Ok(())
}

pub fn json_document(config: &Value, records: Vec<Value>, summary: Option<Summary>) -> Value {
    let mut doc = Map::new();
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("config".into(), config.clone());
    doc.insert("records".into(), Value::Array(records));
    if let Some(s) = summary {
        doc.insert("summary".into(), json!(s));
    }
    Value::Object(doc)
}

pub fn write(out: &mut dyn Write, format: Format, config: &Value, t: &Table) -> std::io::Result<()> {
    match format {
        Format::Table => write_table(out, t),
        Format::Csv => write_csv(out, t),
        Format::Json => {
            let records = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect()))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &json_document(config, records, None))?;
            writeln!(out)
        }
    }
}

fn split(q: &Quantity) -> (f64, f64) {
    let c = q.as_complex();
    (c.re, c.im)
}

/// Columns of the verification CSV, in order.
pub const REPORT_COLUMNS: [&str; 11] = [
    "check_id",
    "parameters",
    "observed_re",
    "observed_im",
    "expected_re",
    "expected_im",
    "abs_err",
    "rel_err",
    "tolerance",
    "pass",
    "notes",
];

pub fn write_reports(out: &mut dyn Write, format: Format, config: &Value, records: &[VerificationReport]) -> std::io::Result<()> {
    let summary = Summary::of(records);
    match format {
        Format::Json => {
            let recs = records.iter().map(|r| serde_json::to_value(r).expect("report serializes")).collect();
            serde_json::to_writer_pretty(&mut *out, &json_document(config, recs, Some(summary)))?;
            writeln!(out)
        }
        Format::Csv => {
            let mut t = Table::new(&REPORT_COLUMNS);
            for r in records {
                let (ore, oim) = split(&r.observed);
                let (ere, eim) = split(&r.expected);
                t.push(vec![
                    r.check_id.as_str().into(),
                    serde_json::to_string(&r.parameters).unwrap_or_default().into(),
                    ore.into(),
                    oim.into(),
                    ere.into(),
                    eim.into(),
                    r.abs_err.into(),
                    r.rel_err.into(),
                    r.tolerance.into(),
                    r.pass.into(),
                    r.notes.as_str().into(),
                ]);
            }
            write_csv(out, &t)
        }
        Format::Table => {
            let mut t = Table::new(&["status", "check_id", "parameters", "observed", "expected", "rel_err", "tolerance"]);
            for r in records {
                t.push(vec![
                    r.pass.into(),
                    r.check_id.as_str().into(),
                    compact_params(r).into(),
                    r.observed.to_string().into(),
                    r.expected.to_string().into(),
                    format!("{:.3e}", r.rel_err).into(),
                    format!("{:.1e}", r.tolerance).into(),
                ]);
            }
            write_table(out, &t)?;
            writeln!(out)?;
            for r in records.iter().filter(|r| !r.pass) {
                writeln!(out, "FAIL {} {}: {}", r.check_id, compact_params(r), r.notes)?;
            }
            writeln!(out, "total {}  passed {}  failed {}", summary.total, summary.passed, summary.failed)
        }
    }
}

fn compact_params(r: &VerificationReport) -> String {
    r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}
