//! Tabular results rendered as CSV or as JSON arrays of records.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    /// Exact integer of any size, kept in decimal.
    Int(String),
    Real(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn int(x: impl ToString) -> Cell {
        Cell::Int(x.to_string())
    }

    pub fn text(x: impl ToString) -> Cell {
        Cell::Text(x.to_string())
    }

    pub fn opt_real(x: Option<f64>) -> Cell {
        x.map_or(Cell::Empty, Cell::Real)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Real(x) => fmt_real(*x),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(s) => match (s.parse::<i64>(), s.parse::<u64>()) {
                (Ok(v), _) => Value::from(v),
                (_, Ok(v)) => Value::from(v),
                _ => Value::String(s.clone()),
            },
            Cell::Real(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Seventeen significant digits: plain decimals for moderate magnitudes,
/// scientific notation otherwise.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..16).contains(&e) {
        let s = format!("{:.*}", (16 - e) as usize, x);
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io { path: "<csv>".into(), message: e.to_string() };
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io { path: "<csv>".into(), message: e.to_string() })?;
        Ok(String::from_utf8(bytes).expect("utf-8 cells"))
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self.header.iter().zip(r).map(|(h, c)| (h.to_string(), c.json())).collect();
                Value::Object(m)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).unwrap();
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn emit(table: &Table, format: Format, output: Option<&str>) -> Result<(), CliError> {
    let text = match format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(),
    };
    match output {
        None | Some("-") => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io { path: "<stdout>".into(), message: e.to_string() })
        }
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(0.3), "0.29999999999999999");
        assert_eq!(fmt_real(0.5), "0.5");
        assert_eq!(fmt_real(2.0), "2");
        assert_eq!(fmt_real(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(fmt_real(1e-9), "1.0000000000000001e-9");
        assert_eq!(fmt_real(-1234.5), "-1234.5");
        assert_eq!(fmt_real(f64::NAN), "NaN");
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["n", "x", "note"]);
        t.push(vec![Cell::int(1), Cell::Real(0.5), Cell::text("a,b")]);
        t.push(vec![Cell::int("123456789012345678901234567890"), Cell::Empty, Cell::text("")]);
        assert_eq!(t.to_csv().unwrap(), "n,x,note\n1,0.5,\"a,b\"\n123456789012345678901234567890,,\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["n"], 1);
        assert_eq!(v[1]["n"], "123456789012345678901234567890");
        assert!(v[1]["x"].is_null());
    }
}
