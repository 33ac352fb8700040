use thiserror::Error;

use crate::model::ValidityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// The characteristic matrix violates the non-singularity condition.
    #[error("not a characteristic matrix: {0}")]
    Invalid(ValidityReport),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Digraph-level structural problem (cycle, bad edge, zero diagonal block).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("search space of 2^{bits} candidates exceeds the budget of {budget}")]
    Budget { bits: u32, budget: u64 },

    /// An invariant that validated input should always satisfy was broken.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
