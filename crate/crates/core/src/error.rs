//! Error type shared by the library and the `rroc` binary.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} values vs {right} values")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("asymmetry alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),

    #[error("invalid RROC point ({over}, {under}): OVER must be >= 0 and UNDER <= 0")]
    InvalidPoint { over: f64, under: f64 },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("shift grid must be strictly increasing (violated at position {0})")]
    NonMonotoneGrid(usize),

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("row {row}, column `{column}`: cannot parse `{value}` as a number")]
    Parse {
        row: usize,
        column: String,
        value: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for this error: 2 configuration, 3 data, 4 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MissingColumn(_) | Error::Config(_) | Error::AlphaOutOfRange(_) => 2,
            Error::Invariant(_) => 4,
            _ => 3,
        }
    }
}
