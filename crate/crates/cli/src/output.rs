//! Rendering of command results as tables, CSV or JSON.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use caloron_core::chern_weil::NumericReport;
use caloron_core::format::sig;
use clap::ValueEnum;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Aligned text for reading.
    #[default]
    Table,
    Csv,
    Json,
}

/// A command result that can be printed in every format.
pub trait Document {
    fn table(&self) -> String;
    fn csv(&self) -> String;
    fn json(&self) -> CliResult<String>;
}

/// Implements [`Document::json`] through serde.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render(doc: &dyn Document, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Table => doc.table(),
        Format::Csv => doc.csv(),
        Format::Json => doc.json()?,
    })
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

/// Appends report rows to a CSV ledger, writing the header on first use.
pub fn append_ledger(path: &Path, reports: &[&NumericReport]) -> CliResult<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(path, e))?;
    let mut text = String::new();
    if fresh {
        text.push_str(NumericReport::CSV_HEADER);
        text.push('\n');
    }
    for r in reports {
        text.push_str(&r.csv_row());
        text.push('\n');
    }
    file.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))
}

pub const REPORT_CSV_HEADER: &str = "quantity,numeric,closed_form,abs_error,tolerance,passed";

pub fn report_csv_row(r: &NumericReport) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.quantity,
        sig(r.numeric),
        sig(r.closed_form),
        sig(r.abs_error()),
        sig(r.tolerance),
        r.passed()
    )
}

/// One table line per report.
pub fn report_table_row(r: &NumericReport) -> String {
    let mut s = format!(
        "{:<14} {:>20} {:>20} {:>12} {:>10}  {}",
        r.quantity,
        sig(r.numeric),
        sig(r.closed_form),
        sig(r.abs_error()),
        sig(r.tolerance),
        if r.passed() { "pass" } else { "FAIL" }
    );
    if let Some(n) = r.rounded {
        let _ = write!(s, "  (rounds to {n})");
    }
    s
}

pub fn report_table_header() -> String {
    format!(
        "{:<14} {:>20} {:>20} {:>12} {:>10}  {}",
        "quantity", "numeric", "closed form", "abs error", "tolerance", "status"
    )
}
