use thiserror::Error;

use crate::condition::ConditionId;

/// Errors raised by the eigenstep library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: N = {n}, d = {d} (need 0 <= d <= N)")]
    InvalidParams { n: usize, d: usize },

    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {found}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        found: String,
    },

    #[error("tableau is not in the affine hull of the polytope: {0}")]
    NotInAffineHull(String),

    #[error("parameters out of range for {operation}: N = {n}, d = {d}")]
    OutOfRange {
        operation: &'static str,
        n: usize,
        d: usize,
    },

    #[error("condition {0} is not an inequality of the reduced system")]
    UnknownCondition(ConditionId),

    #[error("condition {0} is implied by the others, no witness exists")]
    SuperfluousCondition(ConditionId),

    #[error("no witness point found for {0}")]
    WitnessNotFound(ConditionId),

    #[error("dimension {dimension} exceeds the enumeration guard of {max}")]
    DimensionTooLarge { dimension: usize, max: usize },

    #[error("vertex limit of {0} exceeded")]
    LimitExceeded(usize),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("cannot parse condition id {0:?}")]
    ParseCondition(String),

    #[error("frame is not equal norm tight within {tol:e} (deviation {deviation:e})")]
    NotTight { tol: f64, deviation: f64 },

    #[error("non-finite entry in frame matrix")]
    NonFinite,

    #[error("harmonic frame unavailable for N = {n}, d = {d}")]
    HarmonicUnavailable { n: usize, d: usize },

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
