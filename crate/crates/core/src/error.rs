use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error(
        "bracket does not straddle target {target}: fraction({lo}) = {lo_fraction}, fraction({hi}) = {hi_fraction}"
    )]
    Bracketing {
        target: f64,
        lo: f64,
        hi: f64,
        lo_fraction: f64,
        hi_fraction: f64,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("infeasible link budget: T*N/P = {required} exceeds l(0) = {available}")]
    Infeasible { required: f64, available: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("integration error: {0}")]
    Integration(String),

    #[error("estimator error: {0}")]
    Estimator(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn geometry(msg: impl Into<String>) -> Self {
        Error::Geometry(msg.into())
    }

    pub(crate) fn config(line: usize, msg: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: msg.into(),
        }
    }

    /// Process exit status used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Parameter(_) => 2,
            Error::Io(_) | Error::Json(_) => 4,
            _ => 3,
        }
    }
}
