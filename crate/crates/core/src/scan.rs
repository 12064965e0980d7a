//! Tabular scan output: an axis, named columns and a metadata echo,
//! serialised to CSV and JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// One table of scan data. Failed rows carry NaN in their value columns;
/// scenarios that can fail add an `ok` column of 0/1 flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanResult {
    pub axis_name: String,
    pub axis: Vec<f64>,
    pub columns: Vec<Column>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl ScanResult {
    pub fn new(axis_name: impl Into<String>, axis: Vec<f64>) -> Self {
        ScanResult {
            axis_name: axis_name.into(),
            axis,
            columns: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.axis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.is_empty()
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if values.len() != self.axis.len() {
            return Err(Error::invalid(
                "column",
                format!("`{name}` has {} rows, axis has {}", values.len(), self.axis.len()),
            ));
        }
        if name == self.axis_name || self.column(&name).is_some() {
            return Err(Error::invalid("column", format!("duplicate column `{name}`")));
        }
        self.columns.push(Column { name, values });
        Ok(())
    }

    pub fn with_column(mut self, name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        self.push_column(name, values)?;
        Ok(self)
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).unwrap_or(Value::Null);
        self.metadata.insert(key.into(), value);
    }

    /// Header row plus one line per axis value. Numbers use the shortest
    /// representation that parses back to the same `f64`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.axis_name);
        for c in &self.columns {
            out.push(',');
            out.push_str(&c.name);
        }
        out.push('\n');
        for (i, x) in self.axis.iter().enumerate() {
            let _ = write!(out, "{x:?}");
            for c in &self.columns {
                let _ = write!(out, ",{:?}", c.values[i]);
            }
            out.push('\n');
        }
        out
    }

    /// Parses the output of [`to_csv`](Self::to_csv). Metadata is not part
    /// of the CSV and comes back empty.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::invalid("csv", "missing header"))?;
        let names: Vec<&str> = header.split(',').map(str::trim).collect();
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for (row, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != names.len() {
                return Err(Error::invalid(
                    "csv",
                    format!("row {} has {} fields, expected {}", row + 1, fields.len(), names.len()),
                ));
            }
            for (j, f) in fields.iter().enumerate() {
                let v = f
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid("csv", format!("row {}: bad number `{f}`", row + 1)))?;
                cols[j].push(v);
            }
        }
        let mut cols = cols.into_iter();
        let mut scan = ScanResult::new(names[0], cols.next().unwrap_or_default());
        for (name, values) in names[1..].iter().zip(cols) {
            scan.push_column(*name, values)?;
        }
        Ok(scan)
    }

    /// Columns as JSON arrays; NaN becomes `null`.
    pub fn to_json(&self) -> String {
        let table = serde_json::json!({
            "axis_name": self.axis_name,
            "axis": self.axis,
            "columns": self.columns,
        });
        serde_json::to_string_pretty(&table).expect("scan table serialises") + "\n"
    }

    pub fn meta_json(&self) -> String {
        serde_json::to_string_pretty(&self.metadata).expect("metadata serialises") + "\n"
    }

    /// Writes `<stem>.csv`, `<stem>.json` and `<stem>.meta.json` into `dir`.
    pub fn write_files(&self, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let files = [
            (dir.join(format!("{stem}.csv")), self.to_csv()),
            (dir.join(format!("{stem}.json")), self.to_json()),
            (dir.join(format!("{stem}.meta.json")), self.meta_json()),
        ];
        let mut written = Vec::new();
        for (path, body) in files {
            fs::write(&path, body)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Linear interpolation of the first sign change of `ys` over `xs`.
pub fn first_zero_crossing(xs: &[f64], ys: &[f64]) -> Option<f64> {
    for i in 1..xs.len().min(ys.len()) {
        let (a, b) = (ys[i - 1], ys[i]);
        if a == 0.0 {
            return Some(xs[i - 1]);
        }
        if a.is_finite() && b.is_finite() && (a < 0.0) != (b < 0.0) {
            return Some(xs[i - 1] + (xs[i] - xs[i - 1]) * a / (a - b));
        }
    }
    None
}

/// Index of the largest finite value.
pub fn argmax(ys: &[f64]) -> Option<usize> {
    ys.iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
}

/// Evenly spaced values from `start` to `stop` inclusive, computed as
/// start + i·step to avoid accumulated drift.
pub fn linspace_step(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ScanResult {
        ScanResult::new("x", vec![0.0, 0.1, 1e-300, -2.5])
            .with_column("a", vec![1.0 / 3.0, f64::NAN, f64::INFINITY, 6.02e23])
            .unwrap()
            .with_column("b", vec![0.0, -0.0, 1.0, f64::MIN_POSITIVE])
            .unwrap()
    }

    #[test]
    fn csv_round_trip_is_bitwise() {
        let s = sample();
        let back = ScanResult::from_csv(&s.to_csv()).unwrap();
        assert_eq!(back.axis_name, "x");
        for (c, d) in s.columns.iter().zip(&back.columns) {
            assert_eq!(c.name, d.name);
            for (u, v) in c.values.iter().zip(&d.values) {
                assert_eq!(u.to_bits(), v.to_bits());
            }
        }
    }

    #[test]
    fn column_length_checked() {
        let mut s = ScanResult::new("x", vec![1.0, 2.0]);
        assert!(s.push_column("y", vec![1.0]).is_err());
        s.push_column("y", vec![1.0, 2.0]).unwrap();
        assert!(s.push_column("y", vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn json_nan_is_null() {
        let j: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert!(j["columns"][0]["values"][1].is_null());
    }

    #[test]
    fn helpers() {
        assert_eq!(first_zero_crossing(&[0.0, 1.0, 2.0], &[1.0, 0.5, -0.5]), Some(1.5));
        assert_eq!(first_zero_crossing(&[0.0, 1.0], &[1.0, 2.0]), None);
        assert_eq!(argmax(&[1.0, f64::NAN, 3.0, 2.0]), Some(2));
        let v = linspace_step(0.1, 1.2, 0.05);
        assert_eq!(v.len(), 23);
        assert!((v[22] - 1.2).abs() < 1e-12);
    }
}
