//! The tabular report document and its two deterministic encodings.
//!
//! Floats are rendered with 12 significant digits in scientific notation;
//! the JSON encoding re-parses that rendering so both formats carry exactly
//! the same numeric values. Exact counts travel as decimal strings (they
//! exceed 64-bit range early).

use std::collections::BTreeMap;
use std::io::Write;

use serde_json::{json, Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    U64(u64),
    F64(f64),
    Str(String),
    Bool(bool),
}

impl Cell {
    pub fn opt_u64(v: Option<u64>) -> Cell {
        v.map_or(Cell::Null, Cell::U64)
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Null => String::new(),
            Cell::U64(v) => v.to_string(),
            Cell::F64(x) => fmt_float(*x),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Null => Value::Null,
            Cell::U64(v) => json!(v),
            Cell::F64(x) => {
                if x.is_finite() {
                    // the same 12-digit decimal the CSV carries
                    let reparsed: f64 = fmt_float(*x).parse().expect("own rendering parses");
                    Number::from_f64(reparsed).map_or(Value::Null, Value::Number)
                } else {
                    Value::String(fmt_float(*x))
                }
            }
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// 12 significant digits, locale-independent; non-finite values spelled out.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.11e}")
    }
}

/// One run's output: fixed column set, rows, run notes and a parameter echo.
#[derive(Debug)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
    pub metadata: BTreeMap<String, String>,
}

impl Report {
    pub fn new(subcommand: &str, columns: Vec<&'static str>, argv_echo: String) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert("tool".into(), "gentile-lab".into());
        metadata.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        metadata.insert("subcommand".into(), subcommand.into());
        metadata.insert("command".into(), argv_echo);
        Report {
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
            metadata,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.flush()
    }

    pub fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).into(), cell.json_value());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "metadata": self.metadata,
            "rows": rows,
            "notes": self.notes,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}
