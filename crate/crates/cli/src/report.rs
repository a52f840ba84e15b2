//! Output records. JSON output is one [`ReportRecord`] per line; CSV is
//! available for page tables and barcodes.

use std::io::Write;

use rhomotopy::{Backend, Scalar};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One answered query. Field order is fixed by the declaration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRecord {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub query: Value,
    pub result: Value,
    pub provenance: Option<String>,
    /// `None` when timing is switched off for reproducible output.
    pub wall_time_ms: Option<f64>,
}

impl ReportRecord {
    pub fn new(command: &str, query: Value, result: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            command: command.to_string(),
            query,
            result,
            provenance: None,
            wall_time_ms: None,
        }
    }

    pub fn with_provenance(mut self, provenance: impl ToString) -> Self {
        self.provenance = Some(provenance.to_string());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn write(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Integers and floats as JSON numbers, rationals as `"p/q"` strings so no
/// precision is lost.
pub fn scalar_json<T: Scalar>(v: &T) -> Value {
    match T::BACKEND {
        Backend::Integer => v.to_string().parse::<i64>().map_or(Value::Null, Value::from),
        Backend::Float => Value::from(v.to_f64()),
        Backend::Rational => Value::String(v.to_string()),
    }
}

pub fn write_json_lines(records: &[ReportRecord], mut out: impl Write) -> std::io::Result<()> {
    for record in records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
