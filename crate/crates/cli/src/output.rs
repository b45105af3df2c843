//! Result tables and their CSV and JSON renderings.
//!
//! CSV files follow RFC 4180 (CRLF line ends, quoting only when needed)
//! and open with `#` lines that hold the manifest, the resolved config,
//! the column documentation and any summary values. JSON output is one
//! object `{config, columns, results, summary?, manifest}`.

use serde::ser::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::config::{ExperimentConfig, Format};
use crate::error::Result;
use crate::manifest::Manifest;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    /// CSV text. Floats use the shortest round-trip form, with an exponent
    /// for very small or large magnitudes.
    pub fn to_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            // JSON has no infinities; they become null like missing values.
            Cell::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Float(_) | Cell::Empty => s.serialize_none(),
            Cell::Bool(v) => s.serialize_bool(*v),
            Cell::Text(v) => s.serialize_str(v),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
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

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: &'static str,
    pub doc: String,
}

pub fn col(name: &'static str, doc: impl Into<String>) -> Column {
    Column { name, doc: doc.into() }
}

/// Rows of one experiment plus free-form summary values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Self {
            columns,
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }
}

pub fn render(config: &ExperimentConfig, manifest: &Manifest, table: &Table) -> Result<Vec<u8>> {
    match config.format {
        Format::Csv => render_csv(config, manifest, table),
        Format::Json => render_json(config, manifest, table),
    }
}

fn render_csv(config: &ExperimentConfig, manifest: &Manifest, table: &Table) -> Result<Vec<u8>> {
    let mut meta = String::new();
    let mut line = |s: &str| {
        meta.push('#');
        if !s.is_empty() {
            meta.push(' ');
            meta.push_str(s);
        }
        meta.push_str("\r\n");
    };
    line(&format!("isac-net {}", config.experiment.name()));
    line(&format!("manifest: {}", serde_json::to_string(manifest)?));
    line("config:");
    for l in config.to_toml()?.lines() {
        line(&if l.is_empty() { String::new() } else { format!("  {l}") });
    }
    line("columns:");
    for c in &table.columns {
        line(&format!("  {}: {}", c.name, c.doc));
    }
    for (k, v) in &table.summary {
        line(&format!("summary {k}: {}", serde_json::to_string(v)?));
    }

    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(meta.into_bytes());
    w.write_record(table.columns.iter().map(|c| c.name))?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::to_field))?;
    }
    w.into_inner().map_err(|e| crate::error::CliError::Serialize(e.to_string()))
}

fn render_json(config: &ExperimentConfig, manifest: &Manifest, table: &Table) -> Result<Vec<u8>> {
    let results: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| Ok((c.name.to_string(), serde_json::to_value(v)?)))
                .collect::<Result<_>>()?;
            Ok(Value::Object(obj))
        })
        .collect::<Result<_>>()?;
    let mut top = Map::new();
    top.insert("config".into(), serde_json::to_value(config)?);
    top.insert("columns".into(), {
        let docs: Map<String, Value> =
            table.columns.iter().map(|c| (c.name.to_string(), Value::String(c.doc.clone()))).collect();
        Value::Object(docs)
    });
    top.insert("results".into(), Value::Array(results));
    if !table.summary.is_empty() {
        top.insert("summary".into(), Value::Object(table.summary.clone()));
    }
    top.insert("manifest".into(), serde_json::to_value(manifest)?);
    let mut out = serde_json::to_vec_pretty(&Value::Object(top))?;
    out.push(b'\n');
    Ok(out)
}
