//! Error type shared by the library and the command-line front end.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JflError {
    /// Input violates a documented invariant; the message names it.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("lattice is not maximal: {0}")]
    NotMaximal(String),
    #[error("computation exceeds the enumeration bound: {0}")]
    TooLarge(String),
    #[error("no entry for {0}")]
    Unsupported(String),
    /// An internal consistency assertion failed.
    #[error("consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, JflError>;
