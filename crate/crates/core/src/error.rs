//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An id does not refer to an element of the complex.
    #[error("invalid {kind} id {id}")]
    InvalidId { kind: &'static str, id: u32 },

    /// Malformed input data; `line` is 1-based when it refers to a text file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An operation would violate a structural invariant of the complex.
    #[error("structural error: {0}")]
    Structural(String),

    /// The face being added is already present (same canonical boundary).
    #[error("duplicate face: {0}")]
    DuplicateFace(String),

    /// A weight rule produced a non-positive or non-finite value in strict mode.
    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),

    /// A vertex has no coordinates but a coordinate-based rule needs them.
    #[error("missing coordinates for vertex {0}")]
    MissingCoordinate(String),

    /// A numeric argument is outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested combination of mode and input makes no sense.
    #[error("{0}")]
    Misuse(String),

    /// The input graph or complex is empty where a non-empty one is required.
    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// An I/O failure attributed to a specific file.
    #[error("{path}: {source}")]
    IoAt {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
