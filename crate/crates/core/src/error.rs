//! Error type shared across the crate.

use crate::embedding::Violation;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance has {spins} spins, exceeding the solver cap of {cap}")]
    SolverCap { spins: usize, cap: usize },

    #[error("value not exactly representable: {0}")]
    ValueRange(String),

    #[error("embedding failed verification with {} violation(s); first: {}", .0.len(), .0[0])]
    InvalidEmbedding(Vec<Violation>),

    #[error("chain for logical vertex {vertex} is not uniform")]
    BrokenChain { vertex: usize },

    #[error("invalid hardware: {0}")]
    InvalidHardware(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
