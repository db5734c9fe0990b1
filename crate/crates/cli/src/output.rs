//! CSV files. Numbers use scientific notation with `.` as decimal separator
//! and LF line endings.

use std::fs::File;
use std::path::Path;

use crate::error::{HarnessError, Result};

/// Nine significant digits, e.g. `4.44000000e-3`.
pub fn sci9(v: f64) -> String {
    format!("{v:.8e}")
}

/// Shortest scientific form that parses back to the same value.
pub fn sci_exact(v: f64) -> String {
    format!("{v:e}")
}

fn writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| HarnessError::io(path, e))
}

/// `run,igd`, one row per run. IGD values are written exactly so that the
/// summary in `result.json` can be recomputed from this file.
pub fn write_igd_csv(path: &Path, values: &[f64]) -> Result<()> {
    let mut w = writer(path)?;
    let io = |e: csv::Error| HarnessError::io(path, e);
    w.write_record(["run", "igd"]).map_err(io)?;
    for (run, v) in values.iter().enumerate() {
        w.write_record([run.to_string(), sci_exact(*v)]).map_err(io)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

/// `f1,...,fm` followed by one row per point.
pub fn write_points_csv(path: &Path, m: usize, points: &[Vec<f64>]) -> Result<()> {
    let mut w = writer(path)?;
    let io = |e: csv::Error| HarnessError::io(path, e);
    w.write_record((1..=m).map(|i| format!("f{i}"))).map_err(io)?;
    for p in points {
        w.write_record(p.iter().map(|v| sci9(*v))).map_err(io)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

/// Reads the `igd` column of an `igd.csv` file.
pub fn read_igd_csv(path: &Path) -> Result<Vec<f64>> {
    let malformed = |msg: String| HarnessError::io(path, format!("malformed igd.csv: {msg}"));
    let mut r = csv::Reader::from_path(path).map_err(|e| HarnessError::io(path, e))?;
    let headers = r.headers().map_err(|e| malformed(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["run", "igd"] {
        return Err(malformed(format!(
            "expected header 'run,igd', got '{}'",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut values = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(|e| malformed(e.to_string()))?;
        let v: f64 = record[1]
            .trim()
            .parse()
            .map_err(|_| malformed(format!("row {}: '{}' is not a number", i + 1, &record[1])))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(malformed("no rows".into()));
    }
    Ok(values)
}
