//! Tabular output as CSV or flat JSON objects.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::Context;
use serde_json::{Map, Number, Value};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Emit a single JSON object rather than an array.
    pub single: bool,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            single: false,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// `digits` significant digits in scientific notation.
pub fn format_num(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{:.*e}", digits - 1, x)
}

fn json_num(x: f64, digits: usize) -> Value {
    // round to the requested digits first so CSV and JSON carry the same value
    let rounded: f64 = format_num(x, digits).parse().unwrap_or(x);
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

fn csv_text(cell: &Cell, digits: usize) -> String {
    match cell {
        Cell::Num(x) => format_num(*x, digits),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn json_value(cell: &Cell, digits: usize) -> Value {
    match cell {
        Cell::Num(x) => json_num(*x, digits),
        Cell::Text(s) => Value::from(s.as_str()),
        Cell::Bool(b) => Value::from(*b),
        Cell::Empty => Value::Null,
    }
}

pub fn write_table(table: &Table, format: Format, digits: usize, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|c| csv_text(c, digits)))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let objects: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let map: Map<String, Value> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, c)| (k.clone(), json_value(c, digits)))
                        .collect();
                    Value::Object(map)
                })
                .collect();
            let doc = if table.single && objects.len() == 1 {
                objects.into_iter().next().unwrap()
            } else {
                Value::Array(objects)
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn emit(table: &Table, format: Format, digits: usize, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            write_table(table, format, digits, &mut f)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_table(table, format, digits, &mut lock)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for &x in &[
            0.1,
            -2.0 / 3.0,
            1e-300,
            6.02214076e23,
            std::f64::consts::PI,
            f64::MIN_POSITIVE,
        ] {
            let s = format_num(x, 17);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![Cell::Num(0.5), Cell::Empty]);
        let mut buf = Vec::new();
        write_table(&t, Format::Csv, 6, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n5.00000e-1,\n");
    }

    #[test]
    fn json_single_object() {
        let mut t = Table::new(["w_exact", "regime"]);
        t.single = true;
        t.push(vec![Cell::Num(-1.0), "weak".into()]);
        let mut buf = Vec::new();
        write_table(&t, Format::Json, 12, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["w_exact"], -1.0);
        assert_eq!(v["regime"], "weak");
    }
}
