//! CSV and JSON writers.
//!
//! Tables are written as CSV with a header row, or as JSON
//! `{"metadata": {...}, "records": [{column: value, ...}, ...]}`. Reports are
//! `name,value` lines in CSV and `{"metadata": {...}, "values": {...}}` in JSON.

use std::io::Write;

use clap::ValueEnum;
use coldecay_core::{DensityMatrix, TimeSeries};
use serde_json::{Map, Value};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Shortest round-trip decimal, switching to exponent form for very small
/// or very large magnitudes.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone)]
pub struct Table {
    pub metadata: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(metadata: Map<String, Value>, columns: &[&str]) -> Self {
        Self {
            metadata,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let records: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, &x)| (c.clone(), json_num(x)));
                        Value::Object(obj.collect())
                    })
                    .collect();
                let doc = serde_json::json!({ "metadata": self.metadata, "records": records });
                serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// Column names `rho_re_jk`, `rho_im_jk` for `j, k = 1..4`, row-major.
pub fn rho_columns() -> Vec<String> {
    let mut cols = Vec::with_capacity(32);
    for j in 1..=4 {
        for k in 1..=4 {
            cols.push(format!("rho_re_{j}{k}"));
            cols.push(format!("rho_im_{j}{k}"));
        }
    }
    cols
}

pub fn rho_cells(rho: &DensityMatrix) -> impl Iterator<Item = f64> + '_ {
    (0..16).flat_map(move |i| {
        let z = rho[(i / 4, i % 4)];
        [z.re, z.im]
    })
}

/// `t, concurrence[, rho_re_jk, rho_im_jk, ...]`.
pub fn series_table(series: &TimeSeries, metadata: Map<String, Value>, with_rho: bool) -> Table {
    let mut columns = vec!["t".to_string(), "concurrence".to_string()];
    if with_rho {
        columns.extend(rho_columns());
    }
    let mut table = Table {
        metadata,
        columns,
        rows: Vec::with_capacity(series.len()),
    };
    for r in series.records() {
        let mut row = vec![r.t, r.concurrence];
        if with_rho {
            if let Some(rho) = &r.state {
                row.extend(rho_cells(rho));
            }
        }
        table.push(row);
    }
    table
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub metadata: Map<String, Value>,
    pub values: Vec<(String, Value)>,
}

impl Report {
    pub fn num(&mut self, name: impl Into<String>, x: f64) {
        self.values.push((name.into(), json_num(x)));
    }

    pub fn flag(&mut self, name: impl Into<String>, b: bool) {
        self.values.push((name.into(), Value::Bool(b)));
    }

    pub fn matrix(&mut self, prefix: &str, rho: &DensityMatrix) {
        for j in 0..4 {
            for k in 0..4 {
                let z = rho[(j, k)];
                self.num(format!("{prefix}_re_{}{}", j + 1, k + 1), z.re);
                self.num(format!("{prefix}_im_{}{}", j + 1, k + 1), z.im);
            }
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "name,value")?;
                for (name, v) in &self.values {
                    let cell = match v {
                        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt_num),
                        other => other.to_string(),
                    };
                    writeln!(out, "{name},{cell}")?;
                }
            }
            Format::Json => {
                let values: Map<String, Value> = self.values.iter().cloned().collect();
                let doc = serde_json::json!({ "metadata": self.metadata, "values": values });
                serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}
