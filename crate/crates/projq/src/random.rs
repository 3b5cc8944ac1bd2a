//! Seeded random instances: states, subspaces, events, operators, and
//! density operators.
//!
//! Every generator is deterministic in its seed (ChaCha streams), which is
//! what the invariance and Monte Carlo test suites lean on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::events::{Event, StatePoint, Subspace};
use crate::linalg::{gaussian_vector, orthonormalize, random_unitary, C64, CMatrix, DEFAULT_TOL};
use crate::observable::DensityOperator;

/// A Haar-random point of the projective space.
pub fn random_state(dim: usize, seed: u64) -> StatePoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v = gaussian_vector(dim, &mut rng);
        if let Ok(p) = StatePoint::new(&v, DEFAULT_TOL) {
            return p;
        }
    }
}

/// A random subspace of the requested Hilbert dimension (0 ≤ rank ≤ dim).
pub fn random_subspace(dim: usize, rank: usize, seed: u64) -> Subspace {
    assert!(rank <= dim, "rank must not exceed the ambient dimension");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let vectors: Vec<_> = (0..rank).map(|_| gaussian_vector(dim, &mut rng)).collect();
        let basis = orthonormalize(dim, &vectors, DEFAULT_TOL);
        if basis.ncols() == rank {
            return Subspace::from_orthonormal_basis(basis);
        }
    }
}

/// A random event of the requested rank.
pub fn random_event(dim: usize, rank: usize, seed: u64) -> Event {
    Event::from_subspace(random_subspace(dim, rank, seed))
}

/// A complex Gaussian matrix (Ginibre draw).
pub fn random_operator(dim: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<_> = (0..dim).map(|_| gaussian_vector(dim, &mut rng)).collect();
    CMatrix::from_columns(&columns)
}

/// A random Hermitian matrix `(G + G*)/2`.
pub fn random_hermitian(dim: usize, seed: u64) -> CMatrix {
    let g = random_operator(dim, seed);
    (&g + g.adjoint()) * C64::new(0.5, 0.0)
}

/// A random density operator with spectrum bounded away from zero and
/// pairwise-distinct eigenvalues (up to the generator's resolution).
pub fn random_density(dim: usize, seed: u64) -> DensityOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (0..dim).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let u = random_unitary(dim, seed ^ 0x9e3779b97f4a7c15);
    let lambda = CMatrix::from_diagonal(&crate::linalg::CVector::from_iterator(
        dim,
        weights.iter().map(|&w| C64::new(w, 0.0)),
    ));
    let m = &u * lambda * u.adjoint();
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityOperator::new(m).expect("constructed spectrum is a valid density")
}

/// A random contraction `U·diag(s)·V*` with singular values in `[0, 1]`.
pub fn random_contraction(dim: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..=1.0)).collect();
    let u = random_unitary(dim, seed ^ 0x517cc1b727220a95);
    let v = random_unitary(dim, seed ^ 0x2545f4914f6cdd1d);
    let sigma = CMatrix::from_diagonal(&crate::linalg::CVector::from_iterator(
        dim,
        s.iter().map(|&x| C64::new(x, 0.0)),
    ));
    &u * sigma * v.adjoint()
}
