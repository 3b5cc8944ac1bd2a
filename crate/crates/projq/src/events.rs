//! Events, subspaces, and points of the projective space.
//!
//! A [`Subspace`] stores an orthonormal basis of a closed linear subspace
//! and doubles as the projective subspace it maps to; its projective
//! dimension is one less than its Hilbert dimension, with `dim ∅ = -1`.
//! An [`Event`] is the orthogonal projection onto a subspace, cached in
//! both representations. A [`StatePoint`] is a point of the projective
//! space, held as a unit representative with a canonical phase.
//!
//! Subspaces form an orthocomplemented lattice under [`Subspace::join`],
//! [`Subspace::meet`], and [`Subspace::ortho`].
//!
//! All three types serialize to JSON as `{"ambient_dim": d, "columns":
//! [...]}` with columns stored column-major and complex entries as
//! `[re, im]` pairs; events serialize their projector matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_deviation, hermitian_eig, max_abs, operator_norm, orthonormalize, C64, CMatrix,
    CVector, DEFAULT_TOL,
};

/// A closed linear subspace, stored as an orthonormal basis (`ambient_dim × r`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct Subspace {
    basis: CMatrix,
}

impl Subspace {
    /// Span of the given vectors, orthonormalized with rank decisions at `tol`.
    pub fn from_vectors(ambient_dim: usize, vectors: &[CVector], tol: f64) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    left: ambient_dim,
                    right: v.len(),
                });
            }
        }
        Ok(Self {
            basis: orthonormalize(ambient_dim, vectors, tol),
        })
    }

    /// Wrap a matrix already known to have orthonormal columns.
    pub(crate) fn from_orthonormal_basis(basis: CMatrix) -> Self {
        Self { basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            basis: CMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            basis: CMatrix::identity(ambient_dim, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Hilbert dimension of the subspace (the basis rank).
    pub fn hilbert_dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Projective dimension: `hilbert_dim - 1`, so the zero subspace maps
    /// to the empty projective subspace of dimension -1.
    pub fn projective_dim(&self) -> i64 {
        self.basis.ncols() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.basis.ncols() == 0
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// The orthogonal projector `B·B*` onto this subspace.
    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// Smallest subspace containing both: span of the union of bases.
    pub fn join(&self, other: &Subspace, tol: f64) -> Result<Subspace> {
        self.check_ambient(other)?;
        let cols: Vec<CVector> = self
            .basis
            .column_iter()
            .chain(other.basis.column_iter())
            .map(|c| c.into_owned())
            .collect();
        Ok(Subspace {
            basis: orthonormalize(self.ambient_dim(), &cols, tol),
        })
    }

    /// Intersection, computed as the span of eigenvectors of `P_a·P_b·P_a`
    /// with eigenvalue at least `1 - tol`.
    pub fn meet(&self, other: &Subspace, tol: f64) -> Result<Subspace> {
        self.check_ambient(other)?;
        let pa = self.projector();
        let pb = other.projector();
        let m = &pa * pb * &pa;
        let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let (values, vectors) = hermitian_eig(&m)?;
        let kept: Vec<CVector> = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= 1.0 - tol)
            .map(|(i, _)| vectors.column(i).into_owned())
            .collect();
        Ok(Subspace {
            basis: orthonormalize(self.ambient_dim(), &kept, tol),
        })
    }

    /// Orthocomplement: the kernel of the projector.
    pub fn ortho(&self) -> Subspace {
        let p = self.projector();
        let (values, vectors) = hermitian_eig(&p).expect("projector is Hermitian");
        // Projector eigenvalues cluster at 0 and 1; cut in the middle.
        let kept: Vec<CVector> = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < 0.5)
            .map(|(i, _)| vectors.column(i).into_owned())
            .collect();
        Subspace {
            basis: orthonormalize(self.ambient_dim(), &kept, DEFAULT_TOL),
        }
    }

    /// Same subspace up to `tol`, compared through projectors.
    pub fn approx_eq(&self, other: &Subspace, tol: f64) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && operator_norm(&(self.projector() - other.projector())) <= tol
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// An event: an orthogonal projection `P = P² = P*`, cached together with
/// its range subspace.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct Event {
    projector: CMatrix,
    range: Subspace,
}

impl Event {
    /// The event projecting onto `s` (the `E ↔ E'` bijection, one way).
    pub fn from_subspace(s: Subspace) -> Self {
        Self {
            projector: s.projector(),
            range: s,
        }
    }

    /// Validate a projector (`P = P* = P²` within `tol`, scale-adjusted)
    /// and recover its range.
    pub fn from_projector(projector: CMatrix, tol: f64) -> Result<Self> {
        if projector.nrows() != projector.ncols() {
            return Err(Error::NotSquare {
                rows: projector.nrows(),
                cols: projector.ncols(),
            });
        }
        let scale = max_abs(&projector).max(1.0);
        let herm = hermitian_deviation(&projector);
        if herm > tol * scale {
            return Err(Error::NotAProjection { deviation: herm });
        }
        let idem = max_abs(&(&projector * &projector - &projector));
        if idem > tol * scale {
            return Err(Error::NotAProjection { deviation: idem });
        }
        let (values, vectors) = hermitian_eig(&projector)?;
        let kept: Vec<CVector> = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.5)
            .map(|(i, _)| vectors.column(i).into_owned())
            .collect();
        let dim = projector.nrows();
        Ok(Self {
            projector,
            range: Subspace {
                basis: orthonormalize(dim, &kept, tol),
            },
        })
    }

    /// Rank-1 event `|ψ⟩⟨ψ|` onto the ray of `v`.
    pub fn ray(v: &CVector, tol: f64) -> Result<Self> {
        let point = StatePoint::new(v, tol)?;
        Ok(point.ray_event())
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_subspace(Subspace::zero(ambient_dim))
    }

    pub fn identity(ambient_dim: usize) -> Self {
        Self::from_subspace(Subspace::full(ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.projector.nrows()
    }

    pub fn rank(&self) -> usize {
        self.range.hilbert_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.range.is_zero()
    }

    pub fn projector(&self) -> &CMatrix {
        &self.projector
    }

    /// The range subspace (the `E ↔ E'` bijection, the other way).
    pub fn range(&self) -> &Subspace {
        &self.range
    }

    /// The complementary event `I - P`, projecting onto the orthocomplement.
    pub fn complement(&self) -> Event {
        let d = self.ambient_dim();
        Event {
            projector: CMatrix::identity(d, d) - &self.projector,
            range: self.range.ortho(),
        }
    }

    /// Apply the projector to a vector.
    pub fn apply(&self, v: &CVector) -> CVector {
        &self.projector * v
    }

    pub fn approx_eq(&self, other: &Event, tol: f64) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && operator_norm(&(&self.projector - &other.projector)) <= tol
    }
}

/// A point of the projective space: a unit representative with canonical
/// phase (the largest-magnitude entry is real and positive; the first such
/// index wins on ties).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct StatePoint {
    representative: CVector,
}

impl StatePoint {
    /// Project a nonzero vector to its point: normalize and fix the phase.
    /// `StatePoint::new(λv) = StatePoint::new(v)` for every `λ ≠ 0`.
    pub fn new(v: &CVector, tol: f64) -> Result<Self> {
        let norm = v.norm();
        if norm <= tol {
            return Err(Error::ZeroVector);
        }
        let mut rep = v / C64::new(norm, 0.0);
        canonicalize_phase(&mut rep);
        Ok(Self { representative: rep })
    }

    pub fn representative(&self) -> &CVector {
        &self.representative
    }

    pub fn ambient_dim(&self) -> usize {
        self.representative.len()
    }

    /// The rank-1 event `|ψ⟩⟨ψ|` onto this point's ray.
    pub fn ray_event(&self) -> Event {
        let basis = CMatrix::from_columns(std::slice::from_ref(&self.representative));
        Event::from_subspace(Subspace::from_orthonormal_basis(basis))
    }
}

/// Rotate the global phase so the largest-magnitude entry is real positive.
fn canonicalize_phase(v: &mut CVector) {
    let mut best = 0usize;
    let mut best_mag = 0.0_f64;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best] / C64::new(best_mag, 0.0);
        *v *= phase.conj();
    }
}

/// Standard basis vector `e_i` in dimension `dim`.
pub fn basis_vector(dim: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[i] = C64::new(1.0, 0.0);
    v
}

/// Positive semidefiniteness check through the spectrum: all eigenvalues
/// at least `-tol`.
pub fn is_psd(m: &CMatrix, tol: f64) -> Result<bool> {
    let (values, _) = hermitian_eig(m)?;
    Ok(values.iter().all(|&v| v >= -tol))
}

// JSON shape shared by Subspace, Event, and StatePoint.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    ambient_dim: usize,
    columns: Vec<Vec<[f64; 2]>>,
}

impl MatrixRepr {
    fn from_matrix(m: &CMatrix) -> Self {
        Self {
            ambient_dim: m.nrows(),
            columns: m
                .column_iter()
                .map(|c| c.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    fn to_matrix(&self) -> std::result::Result<CMatrix, String> {
        let mut out = CMatrix::zeros(self.ambient_dim, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            if col.len() != self.ambient_dim {
                return Err(format!(
                    "column {j} has {} entries, expected {}",
                    col.len(),
                    self.ambient_dim
                ));
            }
            for (i, &[re, im]) in col.iter().enumerate() {
                out[(i, j)] = C64::new(re, im);
            }
        }
        Ok(out)
    }
}

impl From<Subspace> for MatrixRepr {
    fn from(s: Subspace) -> Self {
        Self::from_matrix(&s.basis)
    }
}

impl TryFrom<MatrixRepr> for Subspace {
    type Error = String;
    fn try_from(repr: MatrixRepr) -> std::result::Result<Self, String> {
        let basis = repr.to_matrix()?;
        let gram = basis.adjoint() * &basis;
        let id = CMatrix::identity(basis.ncols(), basis.ncols());
        if max_abs(&(gram - id)) > 1e-8 {
            return Err("subspace columns are not orthonormal".into());
        }
        Ok(Subspace { basis })
    }
}

impl From<Event> for MatrixRepr {
    fn from(e: Event) -> Self {
        Self::from_matrix(&e.projector)
    }
}

impl TryFrom<MatrixRepr> for Event {
    type Error = String;
    fn try_from(repr: MatrixRepr) -> std::result::Result<Self, String> {
        let projector = repr.to_matrix()?;
        Event::from_projector(projector, 1e-8).map_err(|e| e.to_string())
    }
}

impl From<StatePoint> for MatrixRepr {
    fn from(p: StatePoint) -> Self {
        Self::from_matrix(&CMatrix::from_columns(&[p.representative]))
    }
}

impl TryFrom<MatrixRepr> for StatePoint {
    type Error = String;
    fn try_from(repr: MatrixRepr) -> std::result::Result<Self, String> {
        let m = repr.to_matrix()?;
        if m.ncols() != 1 {
            return Err(format!("a state point has one column, got {}", m.ncols()));
        }
        StatePoint::new(&m.column(0).into_owned(), DEFAULT_TOL).map_err(|e| e.to_string())
    }
}
