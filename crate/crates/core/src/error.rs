use thiserror::Error;

/// Errors raised by series evaluation, identity checks and calibration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HgfError {
    /// The argument lies outside the convergence domain of a non-terminating series.
    #[error("domain error: {0}")]
    Domain(String),

    /// A gamma factor or lower rising factorial vanishes; `j` is the offending row (1-based).
    #[error("pole at j = {j}: {detail}")]
    Pole { j: usize, detail: String },

    /// An identity was requested outside the hypotheses under which it holds.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Two spectra of different sizes were combined.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The calibration ratio was not constant across probes.
    #[error("calibration spread {spread:e} exceeds tolerance {tolerance:e}")]
    Calibration { spread: f64, tolerance: f64 },

    /// The exact backend was asked for a quantity that is not rational.
    #[error("not representable in the exact backend: {0}")]
    Inexact(String),

    /// Malformed user input (numbers, partitions, parameters).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Malformed coefficient cache file.
    #[error("cache format error: {0}")]
    CacheFormat(String),
}

pub type Result<T> = std::result::Result<T, HgfError>;
