use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// One line of the diagnostics report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticRow {
    pub diagnostic: String,
    pub params: String,
    pub value: f64,
    pub std_error: f64,
    pub reference_value: f64,
    pub verdict: String,
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV with header `diagnostic,params,value,std_error,reference_value,verdict`.
pub fn write_report_csv<W: Write>(rows: &[DiagnosticRow], mut out: W) -> Result<()> {
    writeln!(out, "diagnostic,params,value,std_error,reference_value,verdict")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&r.diagnostic),
            csv_field(&r.params),
            r.value,
            r.std_error,
            r.reference_value,
            csv_field(&r.verdict)
        )?;
    }
    Ok(())
}
