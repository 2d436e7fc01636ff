//! Shared error type for the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation contract (bad dimensions, inhomogeneous
    /// input, non-primitive class, invalid rank parameter, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A computation would need a degree above the presentation's cap.
    #[error("degree {degree} exceeds the configured cap {cap}")]
    CapExceeded { degree: usize, cap: usize },

    /// The request needs external data (a presentation file) that was not
    /// supplied.
    #[error("data required: {0}")]
    DataRequired(String),

    /// Polynomial expression syntax error.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A data file violates its schema.
    #[error("schema violation at {location}: {message}")]
    Schema { location: String, message: String },

    /// A Gysin boundary value is not determined by the table plus the
    /// projection formula.
    #[error("boundary underdetermined on: {}", .0.join(", "))]
    Underdetermined(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
