//! Error type shared by all modules.

use thiserror::Error;

/// Errors surfaced by the probability calculus.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max entry deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not a projection (deviation {deviation:e})")]
    NotAProjection { deviation: f64 },

    #[error("the zero vector has no projective image")]
    ZeroVector,

    #[error("event annihilates the state (probability {probability:e})")]
    AnnihilatedState { probability: f64 },

    #[error("propagator is not a contraction (operator norm {norm})")]
    NotAContraction { norm: f64 },

    #[error("events {i} and {j} are not orthogonal (deviation {deviation:e})")]
    NotOrthogonal { i: usize, j: usize, deviation: f64 },

    #[error("matrix is not an orthonormal basis of the event range: {reason}")]
    NotABasis { reason: String },

    #[error("sequence must contain at least one element")]
    EmptySequence,

    #[error("sample list must be non-empty")]
    EmptySamples,

    #[error("a single point has no projector product; use the amplitude directly")]
    SingletonSequence,

    #[error("density atoms violate the trace condition (sum {sum})")]
    TraceCondition { sum: f64 },

    #[error("invalid atoms: {0}")]
    InvalidAtoms(String),

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("operator trace is not 1 (trace {trace})")]
    InvalidTrace { trace: f64 },

    #[error("malformed Borel query: {0}")]
    MalformedQuery(String),
}

pub type Result<T> = std::result::Result<T, Error>;
