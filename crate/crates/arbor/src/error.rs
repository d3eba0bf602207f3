use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Rejected input: self loops, out-of-range indices, malformed matchings.
    #[error("invalid input: {0}")]
    Input(String),

    /// A parse failure in the edge-list format, with a 1-based line number.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A precondition of the requested operation does not hold
    /// (e.g. asking for a tree-width-2 cover of a tree-width-3 graph).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The search budget ran out before an exact answer was established.
    #[error("budget exhausted during {0}")]
    Budget(String),

    /// A certificate failed its own verification. Always a bug.
    #[error("internal verification failed: {0}")]
    Internal(String),

    /// A derived structure was applied to a graph it was not built from.
    #[error("graph hash mismatch: expected {expected}, got {got}")]
    HashMismatch { expected: String, got: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
