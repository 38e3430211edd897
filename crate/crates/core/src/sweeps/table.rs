use std::io::Write;

use serde_json::{json, Map, Value};

use super::spec::SweepSpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(u64),
    Flag(bool),
    Text(&'static str),
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Real(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Real(x) if x.is_nan() => "NaN".into(),
            Cell::Real(x) if *x > 0.0 => "inf".into(),
            Cell::Real(_) => "-inf".into(),
            Cell::Int(n) => n.to_string(),
            Cell::Flag(b) => b.to_string(),
            Cell::Text(s) => (*s).into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Real(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Flag(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Cell::Real(x) => Some(*x),
            Cell::Int(n) => Some(*n as f64),
            _ => None,
        }
    }

    pub fn as_flag(&self) -> Option<bool> {
        match self {
            Cell::Flag(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&'static str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }
}

/// Rows of one sweep, in point order, with the spec that produced them.
#[derive(Clone, Debug)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns.iter().position(|c| *c == name).ok_or_else(|| {
            Error::InvalidSpec(format!(
                "no column `{name}` in a {} table",
                self.spec.kind()
            ))
        })
    }

    /// Numeric column; non-numeric cells read as NaN.
    pub fn reals(&self, name: &str) -> Result<Vec<f64>> {
        let i = self.column_index(name)?;
        Ok(self
            .rows
            .iter()
            .map(|r| r[i].as_real().unwrap_or(f64::NAN))
            .collect())
    }

    pub fn flags(&self, name: &str) -> Result<Vec<bool>> {
        let i = self.column_index(name)?;
        Ok(self
            .rows
            .iter()
            .map(|r| r[i].as_flag().unwrap_or(false))
            .collect())
    }

    pub fn texts(&self, name: &str) -> Result<Vec<&'static str>> {
        let i = self.column_index(name)?;
        Ok(self
            .rows
            .iter()
            .map(|r| r[i].as_text().unwrap_or(""))
            .collect())
    }

    /// Rows whose text column `name` equals `value`.
    pub fn filter(&self, name: &str, value: &str) -> Result<SweepTable> {
        let i = self.column_index(name)?;
        Ok(SweepTable {
            spec: self.spec.clone(),
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .filter(|r| r[i].as_text() == Some(value))
                .cloned()
                .collect(),
        })
    }

    pub fn metadata(&self) -> Value {
        json!({
            "artifact": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "kind": self.spec.kind(),
            "seed": self.spec.seed,
            "units": if self.spec.bits { "bits" } else { "nats" },
            "rows": self.rows.len(),
            "spec": serde_json::to_value(&self.spec).unwrap_or(Value::Null),
        })
    }

    /// `#`-prefixed metadata line, header, one record per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# {}", self.metadata())?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    /// `{"metadata": …, "rows": [{column: value, …}, …]}`; non-finite reals
    /// become `null`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| ((*c).to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "metadata": self.metadata(), "rows": rows })
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, &self.to_json())?;
        Ok(())
    }
}
