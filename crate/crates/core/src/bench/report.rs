//! Tabular reports written as RFC-4180 CSV or JSON lines.
//!
//! Both formats carry the same values: fixed-point cells are rounded once
//! and the JSON number is the parse of the CSV text; full-precision cells
//! use 17 significant digits in CSV and the shortest exact form in JSON.

use std::hash::Hasher;
use std::io::Write;
use std::str::FromStr;

use fnv::FnvHasher;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" | "jsonl" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Str(String),
    Int(i64),
    Bool(bool),
    /// Four decimal places (accuracies, milliseconds).
    Fixed(f64),
    /// 17 significant digits (thresholds, weights).
    Exact(f64),
    /// Missing or masked value: empty in CSV, `null` in JSON.
    Na,
    List(Vec<Cell>),
}

impl Cell {
    pub fn str(s: impl Into<String>) -> Cell {
        Cell::Str(s.into())
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Fixed(v) => format!("{v:.4}"),
            Cell::Exact(v) => format!("{v:.16e}"),
            Cell::Na => String::new(),
            Cell::List(items) => items.iter().map(Cell::csv_text).collect::<Vec<_>>().join(";"),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Fixed(v) => number(self.csv_text().parse().unwrap_or(*v)),
            Cell::Exact(v) => number(*v),
            Cell::Na => Value::Null,
            Cell::List(items) => Value::Array(items.iter().map(Cell::json_value).collect()),
        }
    }
}

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Str(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Str(s)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

/// A report with provenance metadata. Rows are emitted in insertion order.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            meta: vec![("library".into(), format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")))],
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Table {
        self.meta.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    /// Comment lines `# key: value`, then a header row and one CSV record per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}").map_err(io_error)?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.flush().map_err(io_error)?;
        Ok(())
    }

    /// One `{"meta": {...}}` line, then one object per row.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> Result<()> {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let mut head = Map::new();
        head.insert("meta".into(), Value::Object(meta));
        writeln!(out, "{}", Value::Object(head)).map_err(io_error)?;
        for row in &self.rows {
            let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json_value)).collect();
            writeln!(out, "{}", Value::Object(obj)).map_err(io_error)?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json_lines(out),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf, format).expect("writing to memory");
        String::from_utf8(buf).expect("reports are UTF-8")
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Io { path: "<report output>".into(), source: e }
}

/// 64-bit FNV-1a of a serialisable config, as 16 hex digits.
pub fn config_hash<T: serde::Serialize>(config: &T) -> String {
    let mut h = FnvHasher::default();
    h.write(serde_json::to_string(config).expect("configs serialise").as_bytes());
    format!("{:016x}", h.finish())
}
