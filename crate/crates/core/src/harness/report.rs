//! JSON and CSV report output.
//!
//! Floats are rounded to 6 significant digits and then printed in shortest
//! round-trip form, so reports are byte-stable across platforms.
//!
//! CSV columns: `graph_id,strategy,target,trial,seed,query_count,returned,
//! success,budget,bound,bound_satisfied` (empty cells for absent values).
//! JSON: the whole [`RunReport`] with keys in lexicographic order.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{usage, Error, Result};

use super::experiment::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(usage(format!("unknown report format `{s}` (json or csv)"))),
        }
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "graph_id",
    "strategy",
    "target",
    "trial",
    "seed",
    "query_count",
    "returned",
    "success",
    "budget",
    "bound",
    "bound_satisfied",
];

/// `x` rounded to 6 significant digits.
pub fn sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = sig6(num.as_f64().expect("f64 number"));
            if let Some(n) = serde_json::Number::from_f64(x) {
                *num = n;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn report_json(report: &RunReport) -> Result<String> {
    let mut v = serde_json::to_value(report)?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn report_csv(report: &RunReport) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    for r in &report.records {
        w.write_record([
            r.graph_id.clone(),
            r.strategy.to_string(),
            r.target.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.query_count.to_string(),
            opt(r.returned.map(|v| v.to_string())),
            r.success.to_string(),
            opt(r.budget.map(|v| v.to_string())),
            sig6(r.bound).to_string(),
            r.bound_satisfied.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_report(report: &RunReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => report_json(report),
        ReportFormat::Csv => report_csv(report),
    }
}

/// Writes the report to `path` in the given format.
pub fn emit_report(report: &RunReport, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let text = render_report(report, format)?;
    let mut f = BufWriter::new(File::create(path)?);
    f.write_all(text.as_bytes())?;
    f.flush()?;
    Ok(())
}
