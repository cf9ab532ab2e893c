//! Deterministic CSV and JSON rendering.
//!
//! Floats are printed with 17 significant digits in scientific notation and
//! lines end in `\n`, so identical inputs give identical bytes.

use std::fmt::Write as _;

use serde_json::Value;

use crate::config::Format;

/// Presentation slack before a clamped probability is reported.
pub const CLAMP_WARN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
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

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else if v == 0.0 {
        // Folds -0 into 0.
        format!("{:.16e}", 0.0f64)
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_float(*v),
            Cell::Num(v) => Value::String(format_float(*v)).to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => Value::String(s.clone()).to_string(),
        }
    }
}

/// Output of one command: metadata plus a rectangular series.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Self::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Clamps a probability into `[0, 1]`, recording a warning when the raw
    /// value was off by more than [`CLAMP_WARN`].
    pub fn probability(&mut self, raw: f64, context: impl FnOnce() -> String) -> f64 {
        let clamped = raw.clamp(0.0, 1.0);
        if (raw - clamped).abs() > CLAMP_WARN {
            self.warnings.push(format!("{}: raw probability {raw:.3e} clamped to {clamped}", context()));
        }
        clamped
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        let mut out = String::from("{\n  \"meta\": {");
        for (k, (key, value)) in self.meta.iter().enumerate() {
            let sep = if k == 0 { "" } else { "," };
            let _ = write!(out, "{sep}\n    {}: {}", Value::String(key.clone()), value);
        }
        out.push_str(if self.meta.is_empty() { "},\n" } else { "\n  },\n" });
        out.push_str("  \"series\": [");
        for (k, row) in self.rows.iter().enumerate() {
            let sep = if k == 0 { "" } else { "," };
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(c, cell)| format!("{}: {}", Value::String(c.clone()), cell.json()))
                .collect();
            let _ = write!(out, "{sep}\n    {{{}}}", fields.join(", "));
        }
        out.push_str(if self.rows.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        out
    }
}
