//! Quantum probability realized on projective Hilbert space.
//!
//! Events (orthogonal projections), projective subspaces, and pure states
//! over finite-dimensional complex Hilbert spaces, together with the full
//! probability calculus built on them:
//!
//! - Born probabilities `‖Eψ‖²` and their density-matrix form `Tr(Eρ)`,
//! - consecutive probabilities `‖E_n⋯E₁ψ‖²` (Wigner's rule), including the
//!   state-free operator-norm form `‖E_n⋯E₀‖²_op` and time-dependent
//!   evolution with contraction propagators,
//! - conditional probabilities, wave-function collapse, and order-dependent
//!   quantum independence / entanglement of event pairs,
//! - σ-additivity with explicit interference cross terms,
//! - the invariant amplitude functions `A_n` on point sequences, expected
//!   values, lower symbols, and operator reconstruction by polarization,
//! - geometric observables (projective-subspace-valued measures) and
//!   geometric density matrices,
//! - a seeded Monte Carlo sampler that validates the closed forms by
//!   simulating sequential binary measurements with the collapse rule.
//!
//! Everything is plain dense linear algebra at desk scale (dimensions up to
//! a few hundred); values are immutable after construction and safe to share
//! across threads.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `projq` binary executes JSON scenario files (see [`scenario`]).

pub mod amplitude;
pub mod error;
pub mod events;
pub mod linalg;
pub mod observable;
pub mod prob;
pub mod random;
pub mod sampler;
pub mod scenario;

pub use amplitude::{Amplitude, PointSequence};
pub use error::{Error, Result};
pub use events::{Event, StatePoint, Subspace};
pub use linalg::{CMatrix, CVector, C64, DEFAULT_TOL};
pub use observable::{BorelQuery, DensityOperator, GeometricDensityMatrix, GeometricObservable};
pub use prob::{EventSequence, IndependenceCheck, InterferenceReport, TimedSequence};
pub use sampler::{FinalState, SampleReport, Trajectory};
