//! Complex dense linear algebra primitives.
//!
//! Everything else in the crate is built on the handful of operations here:
//! inner products, Gram–Schmidt orthonormalization with numerical rank
//! decisions, Hermitian spectral decompositions, the operator norm, and
//! seeded Haar-like random unitaries.
//!
//! The inner product is conjugate-linear in the *first* argument and linear
//! in the second; every module inherits this convention.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CVector = DVector<C64>;
pub type CMatrix = DMatrix<C64>;

/// Default absolute tolerance, scale-adjusted by `max(1, norm)` where a
/// scale is available. Rank decisions, zero-probability branches, and
/// validation checks all cut at this value unless overridden.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Inner product `Σ conj(a_i)·b_i`: conjugate-linear in `a`, linear in `b`.
pub fn inner(a: &CVector, b: &CVector) -> Result<C64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.dotc(b))
}

/// Orthonormal basis of the span of `vectors`, as a `dim × r` matrix with
/// `r` the numerical rank.
///
/// Modified Gram–Schmidt with one reorthogonalization pass; a vector is
/// dropped when its residual norm after projection is at most
/// `tol · max(1, max input norm)`. Empty input yields a `dim × 0` matrix.
///
/// All vectors must have length `dim`.
pub fn orthonormalize(dim: usize, vectors: &[CVector], tol: f64) -> CMatrix {
    for v in vectors {
        assert_eq!(v.len(), dim, "orthonormalize: vector length != dim");
    }
    let scale = vectors
        .iter()
        .map(|v| v.norm())
        .fold(1.0_f64, f64::max);
    let threshold = tol * scale;

    let mut columns: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _pass in 0..2 {
            for q in &columns {
                let coeff = q.dotc(&w);
                w.axpy(-coeff, q, C64::new(1.0, 0.0));
            }
        }
        let norm = w.norm();
        if norm > threshold {
            columns.push(w / C64::new(norm, 0.0));
        }
    }

    let mut out = CMatrix::zeros(dim, columns.len());
    for (j, c) in columns.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

/// Largest singular value of `m`; 0 for empty matrices.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0_f64, |acc, &s| acc.max(s))
}

/// Max entry deviation of `m` from its adjoint.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let mut dev = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Returns eigenvalues in descending order with the matching unitary of
/// eigenvectors as columns. Rejects input whose deviation from Hermitian
/// exceeds `1e-10 · max(1, max entry)`.
pub fn hermitian_eig(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let deviation = hermitian_deviation(m);
    if deviation > 1e-10 * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }

    // Symmetrize away the (tiny, already validated) drift before factoring.
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (j, &i) in order.iter().enumerate() {
        vectors.set_column(j, &eig.eigenvectors.column(i).into_owned());
    }
    Ok((values, vectors))
}

/// Deterministic Haar-like random unitary: orthonormalized columns of a
/// complex Gaussian matrix drawn from a ChaCha stream seeded with `seed`.
pub fn random_unitary(dim: usize, seed: u64) -> CMatrix {
    assert!(dim >= 1, "random_unitary: dim must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let columns: Vec<CVector> = (0..dim)
            .map(|_| gaussian_vector(dim, &mut rng))
            .collect();
        let q = orthonormalize(dim, &columns, DEFAULT_TOL);
        // Gaussian columns are full rank with probability one; retry on the
        // measure-zero degenerate draw.
        if q.ncols() == dim {
            return q;
        }
    }
}

/// Complex standard Gaussian vector from an explicit RNG.
pub fn gaussian_vector<R: rand::Rng>(dim: usize, rng: &mut R) -> CVector {
    CVector::from_fn(dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    })
}
