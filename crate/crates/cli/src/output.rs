//! Tabular reports rendered as CSV or JSON.
//!
//! Floats are written with 17 significant digits and a lowercase exponent in
//! both formats, so a report is byte-identical across runs and the two
//! formats carry the same values.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// `d.dddddddddddddddde±x`; `None` for non-finite values.
pub fn format_float(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    // normalize -0
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.16e}");
    // explicit exponent sign, matching how JSON numbers are re-emitted
    Some(match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    })
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v).unwrap_or_else(|| "nan".to_string()),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => format_float(*v)
                .and_then(|s| Number::from_str(&s).ok())
                .map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
    /// Every comparison in the report held.
    pub passed: bool,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            config: Vec::new(),
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
            passed: true,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn configure(&mut self, key: &str, value: impl Into<Cell>) {
        self.config.push((key.to_string(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Header, one line per row, then `# key,value` lines for config and
    /// summary.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        for (section, entries) in [("config", &self.config), ("summary", &self.summary)] {
            for (k, v) in entries {
                let _ = writeln!(out, "# {section},{k},{}", v.csv());
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let object = |entries: &[(String, Cell)]| {
            Value::Object(entries.iter().map(|(k, v)| (k.clone(), v.json())).collect())
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(m)
            })
            .collect();
        let mut top = Map::new();
        top.insert("config".into(), object(&self.config));
        top.insert("rows".into(), Value::Array(rows));
        top.insert("summary".into(), object(&self.summary));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        s.push('\n');
        s
    }
}
