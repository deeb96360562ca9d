//! CSV/JSON serialization shared by the command-line front end.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::JointEndpointRangeLaw;

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Self::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_owned())
    }
}

/// Round-trippable 17-significant-digit rendering.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Float(v) => f.write_str(&format_float(*v)),
            Self::Int(v) => write!(f, "{v}"),
            Self::Text(s) => f.write_str(s),
        }
    }
}

/// A header plus rows, rendered as comma-separated text.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::to_string).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    /// Array of objects keyed by column name; floats stay numeric where finite.
    pub fn to_json(&self) -> Result<String> {
        let records: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| {
                self.header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| {
                        let v = match c {
                            Cell::Float(x) => serde_json::Number::from_f64(*x)
                                .map_or_else(|| serde_json::Value::String(format_float(*x)), serde_json::Value::Number),
                            Cell::Int(i) => serde_json::Value::from(*i),
                            Cell::Text(s) => serde_json::Value::String(s.clone()),
                        };
                        (h.clone(), v)
                    })
                    .collect()
            })
            .collect();
        Ok(serde_json::to_string_pretty(&records)?)
    }
}

/// Columns `x, r, probability` over the non-zero entries, ordered by `x` then `r`.
pub fn law_table(law: &JointEndpointRangeLaw) -> Table {
    let mut table = Table::new(&["x", "r", "probability"]);
    for (x, r, p) in law.entries() {
        table.push(vec![x.into(), r.into(), p.into()]);
    }
    table
}

/// Echo of a run's resolved configuration; re-running it reproduces the outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub parameters: serde_json::Value,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
}

impl Manifest {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        Self {
            tool: "range-polymer".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            parameters,
            outputs: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
