use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation (e.g. `beta <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The truncated Fock space would exceed the configured dimension guard.
    #[error("truncated Fock space dimension {dim} exceeds the limit {limit}")]
    DimensionTooLarge { dim: u128, limit: u128 },

    /// The requested quantity is affected by the particle-number cutoff.
    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("Tomita data requires a standard subspace (rank of H+iH = {rank_sum}, dim H∩iH = {intersection})")]
    NotStandard { rank_sum: usize, intersection: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}
