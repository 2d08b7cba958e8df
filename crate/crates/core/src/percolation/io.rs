//! Scan result export: per-step CSV and a JSON summary.

use std::io::{BufWriter, Write};

use serde_json::{json, Value};

use crate::error::Result;
use crate::scalar::Scalar;

use super::scan::ScanResult;

/// `param,mean_fraction,std,replications`, one row per evaluated parameter.
pub fn write_scan_csv<T: Scalar, W: Write>(result: &ScanResult<T>, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "param,mean_fraction,std,replications")?;
    for s in result.curve() {
        writeln!(out, "{},{},{},{}", s.param, s.mean_fraction, s.std, s.replications)?;
    }
    out.flush()?;
    Ok(())
}

pub fn scan_summary<T: Scalar>(result: &ScanResult<T>) -> Value {
    let c = &result.config;
    json!({
        "threshold_estimate": result.threshold_estimate.as_f64(),
        "final_bracket": [result.final_bracket.0.as_f64(), result.final_bracket.1.as_f64()],
        "target_fraction": c.target_fraction,
        "tolerance": c.tolerance.as_f64(),
        "bracket": [c.bracket.0.as_f64(), c.bracket.1.as_f64()],
        "replications": c.replications,
        "seeds": c.seeds,
        "evaluations": result.per_step.len(),
    })
}
