use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Input violates a documented invariant; the message names it.
    #[error("{0}")]
    Invalid(String),

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),

    #[error("{what}: {n} vertices exceeds the size guard of {limit}")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    /// A postcondition the library is supposed to guarantee did not hold.
    #[error("internal assertion failed: {0}")]
    Assertion(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
