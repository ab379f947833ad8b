use std::path::PathBuf;

/// Errors raised by the numeric routines and the data loaders.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("{op}: {reason} (got {value})")]
    Domain {
        op: &'static str,
        reason: &'static str,
        value: f64,
    },

    /// A Gamma-function argument landed on a pole.
    #[error("{op}: pole at s = {s} (local parameter {kappa})")]
    Pole { op: &'static str, s: f64, kappa: f64 },

    /// A prime that is bad for the curve (or too small for the short model).
    #[error("prime {p} is not usable for curve {label}: {reason}")]
    BadPrime {
        label: String,
        p: u64,
        reason: &'static str,
    },

    /// A curve record that violates a model invariant.
    #[error("curve {label}: {reason}")]
    InvalidCurve { label: String, reason: String },

    /// A malformed line in a data file.
    #[error("{path}:{line}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, reason: &'static str, value: f64) -> Error {
    Error::Domain { op, reason, value }
}
