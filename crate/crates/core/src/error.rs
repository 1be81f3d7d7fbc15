use thiserror::Error;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardyError {
    #[error("invalid exponents p = {p}, q = {q}: {reason}")]
    InvalidExponents { p: f64, q: f64, reason: &'static str },

    #[error("weight {name}[{index}] = {value} is not a positive finite number")]
    InvalidWeight { name: &'static str, index: i64, value: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("empty interval")]
    Empty,

    #[error("interval too short: need at least {needed} points, have {have}")]
    TooShort { needed: usize, have: usize },

    #[error("index {index} outside [{lo}, {hi}]")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("boundary value at index {index} is not resolved (free boundary)")]
    UnresolvedBoundary { index: i64 },

    #[error("split parameter gamma = {0} outside [0, 1]")]
    InvalidGamma(f64),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },

    #[error("denominator energy vanishes; the ratio is undefined")]
    ZeroEnergy,

    #[error("no bracketing split point exists for these weights")]
    NoBracket,

    #[error("operation requires p = q = 2")]
    NotDiagonal,

    #[error("every seed was degenerate")]
    AllSeedsDegenerate,

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(&'static str),
}

pub type Result<T> = core::result::Result<T, HardyError>;
