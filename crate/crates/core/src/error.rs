use thiserror::Error;

/// Errors raised by the graph algorithms and their validators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input (bad vertex id, empty graph, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A derived parameter left its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A certificate or model failed independent verification.
    #[error("validation error: {0}")]
    Validation(String),

    /// An exact oracle refused an instance over its budget.
    #[error("oracle refused: {0}")]
    Refused(String),

    /// Edge-list text could not be parsed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(format!($($arg)*)) };
}
macro_rules! validation_err {
    ($($arg:tt)*) => { $crate::error::Error::Validation(format!($($arg)*)) };
}
pub(crate) use input_err;
pub(crate) use validation_err;
