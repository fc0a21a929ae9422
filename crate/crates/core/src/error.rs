//! Error type shared by all core modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by dataset operations, generators and learners.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// An operation that needs examples was handed an empty dataset.
    EmptyDataset,
    /// A label class required by the operation has no examples.
    MissingClass { label: usize },
    /// A feature vector (or matrix) does not have the expected size.
    DimensionMismatch { expected: usize, got: usize },
    /// An operation that needs a matrix-shaped dataset got a flat one,
    /// or the matrix shape does not satisfy the operation's requirements.
    BadShape(String),
    /// A hyperparameter or argument is outside its legal range.
    InvalidArgument(String),
    /// An input record or data structure violates a documented invariant.
    InvalidData(String),
    /// A numeric computation produced a non-finite value.
    NonFinite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyDataset => write!(f, "empty dataset"),
            Error::MissingClass { label } => {
                write!(f, "label class {label} has no examples")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::BadShape(msg) => write!(f, "bad shape: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidData(msg) => write!(f, "invalid data: {msg}"),
            Error::NonFinite(msg) => write!(f, "non-finite value: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
