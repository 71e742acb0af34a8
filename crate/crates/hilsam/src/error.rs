//! Error type shared by every layer of the toolkit.

use thiserror::Error;

/// Unified error enum.  Parse and precondition problems are input errors;
/// the remaining variants signal that a computation could not be completed
/// (which is itself meaningful data, e.g. a non-m-primary ideal surfacing
/// as `NoStabilization`).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    RingMismatch(String),

    #[error("arity mismatch: {0} variables vs {1}")]
    ArityMismatch(usize, usize),

    #[error("ideal is not zero-dimensional: leading terms contain no pure power of {var}")]
    NotZeroDimensional { var: String },

    #[error("truncated length did not stabilize within N_cap = {n_cap}; the ideal may not be m-primary or N_cap is too small")]
    NoStabilization { n_cap: u32 },

    #[error("no polynomial window: the order-{order} differences do not vanish on the trailing window (n_max = {n_max} may be too small)")]
    NoPolynomialWindow { order: u32, n_max: u32 },

    #[error("no reduction within cap {cap}: the candidate ideal may not be a reduction")]
    NotAReduction { cap: u32 },

    #[error("superficial element search exhausted after {attempts} attempts")]
    SearchExhausted { attempts: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code bucket: 2 for bad input, 3 for a computation that
    /// could not run to completion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid(_) => 2,
            _ => 3,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
