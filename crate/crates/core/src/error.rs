//! Error type shared across the crate.

use thiserror::Error;

/// Unified error type for problem construction, simulation, optimization,
/// metric evaluation, and the benchmark harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A problem instance violates a structural requirement (bad edge
    /// indices, incomplete graph where a complete one is required, ...).
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// An argument is outside the documented domain of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A request would exceed a deliberate size guard (qubit counts,
    /// brute-force enumeration limits).
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A bitstring does not decode to a valid tour.
    #[error("infeasible assignment: {0}")]
    Infeasible(String),

    /// A numeric invariant that should hold to rounding error was violated
    /// by more than its tolerance.
    #[error("numeric consistency violation: {0}")]
    NumericConsistency(String),

    /// A metric is undefined for the given instance (e.g. a ratio whose
    /// denominator is exactly zero).
    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    /// Every state has the same cost, so normalized quality measures
    /// cannot distinguish anything.
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
