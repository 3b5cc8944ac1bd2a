//! Geometric observables and geometric density matrices.
//!
//! A [`GeometricObservable`] is a finitely supported projective-subspace-
//! valued measure on the real line: finitely many real atom values with
//! mutually orthogonal subspaces that jointly span the whole space. At
//! finite dimension every projection-valued measure has this form, and
//! self-adjoint operators correspond to observables through their spectral
//! decomposition.
//!
//! A [`GeometricDensityMatrix`] is the projective-space form of a density
//! operator: atoms `(a_k, S_k)` with strictly positive, distinct weights,
//! orthogonal subspaces, and `Σ_k (1 + dim S_k)·a_k = 1` (projective
//! dimensions, so `1 + dim S_k` is the Hilbert multiplicity).
//!
//! Queries are finite unions of intervals and points ([`BorelQuery`]),
//! which is all the Borel structure finite support can distinguish.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::{Event, Subspace};
use crate::linalg::{hermitian_eig, operator_norm, C64, CMatrix, CVector};

/// Merging tolerance for spectral clustering: eigenvalues closer than this
/// collapse into one atom, keeping atom values distinct.
pub const EIGENVALUE_MERGE_TOL: f64 = 1e-8;

/// Tolerance on the trace identity `Σ (1 + dim S_k)·a_k = 1`.
pub const TRACE_TOL: f64 = 1e-9;

/// Weights at or below this are treated as zero eigenvalue mass and
/// dropped from density atoms.
const ZERO_WEIGHT_CUT: f64 = 1e-12;

/// One atom of an observable: a real value carrying a subspace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObservableAtom {
    pub value: f64,
    pub subspace: Subspace,
}

/// A finitely supported projective-subspace-valued measure on ℝ.
///
/// Atom values are strictly increasing; subspaces are pairwise orthogonal
/// and jointly complete (`E(ℝ)` is the whole space). Zero subspaces are
/// allowed as atoms and simply carry no support.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ObservableRepr", into = "ObservableRepr")]
pub struct GeometricObservable {
    ambient_dim: usize,
    atoms: Vec<ObservableAtom>,
}

impl GeometricObservable {
    pub fn new(ambient_dim: usize, mut atoms: Vec<ObservableAtom>, tol: f64) -> Result<Self> {
        atoms.sort_by(|a, b| a.value.total_cmp(&b.value));
        for pair in atoms.windows(2) {
            if pair[0].value >= pair[1].value {
                return Err(Error::InvalidAtoms(format!(
                    "atom values must be strictly increasing, got {} then {}",
                    pair[0].value, pair[1].value
                )));
            }
        }
        let mut total_rank = 0usize;
        for atom in &atoms {
            if atom.subspace.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    left: atom.subspace.ambient_dim(),
                    right: ambient_dim,
                });
            }
            total_rank += atom.subspace.hilbert_dim();
        }
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                let deviation = operator_norm(
                    &(atoms[i].subspace.projector() * atoms[j].subspace.projector()),
                );
                if deviation > tol {
                    return Err(Error::NotOrthogonal { i, j, deviation });
                }
            }
        }
        // Orthogonal subspaces span everything exactly when the ranks add up.
        if total_rank != ambient_dim {
            return Err(Error::InvalidAtoms(format!(
                "atom subspaces have total dimension {total_rank}, expected {ambient_dim}"
            )));
        }
        Ok(Self { ambient_dim, atoms })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn atoms(&self) -> &[ObservableAtom] {
        &self.atoms
    }

    /// Evaluate the measure on a query: the join of the atom subspaces
    /// whose value lies in the query. The empty query gives the zero
    /// subspace; the full line gives the whole space.
    pub fn evaluate(&self, query: &BorelQuery, tol: f64) -> Result<Subspace> {
        query.validate()?;
        let mut acc = Subspace::zero(self.ambient_dim);
        for atom in &self.atoms {
            if query.contains(atom.value) {
                acc = acc.join(&atom.subspace, tol)?;
            }
        }
        Ok(acc)
    }

    /// The support: atom values whose subspace is nonzero. Non-empty for
    /// every observable over a nonzero space.
    pub fn support(&self) -> Vec<f64> {
        self.atoms
            .iter()
            .filter(|a| !a.subspace.is_zero())
            .map(|a| a.value)
            .collect()
    }
}

/// The observable of a Hermitian operator: one atom per eigenvalue cluster
/// (clusters merge eigenvalues within [`EIGENVALUE_MERGE_TOL`]), carrying
/// the corresponding eigenspace.
pub fn observable_from_hermitian(t: &CMatrix) -> Result<GeometricObservable> {
    let clusters = eigen_clusters(t)?;
    let atoms = clusters
        .into_iter()
        .map(|(value, subspace)| ObservableAtom { value, subspace })
        .collect();
    GeometricObservable::new(t.nrows(), atoms, EIGENVALUE_MERGE_TOL)
}

/// Spectral clusters of a Hermitian matrix, ascending by eigenvalue:
/// `(cluster mean, eigenspace)` with gaps above the merge tolerance.
fn eigen_clusters(t: &CMatrix) -> Result<Vec<(f64, Subspace)>> {
    let (values, vectors) = hermitian_eig(t)?;
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut clusters: Vec<(f64, Subspace)> = Vec::new();
    let mut start = 0usize;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] - values[order[end - 1]] <= EIGENVALUE_MERGE_TOL {
            end += 1;
        }
        let members = &order[start..end];
        let mean = members.iter().map(|&i| values[i]).sum::<f64>() / members.len() as f64;
        let columns: Vec<CVector> = members
            .iter()
            .map(|&i| vectors.column(i).into_owned())
            .collect();
        let basis = CMatrix::from_columns(&columns);
        clusters.push((mean, Subspace::from_orthonormal_basis(basis)));
        start = end;
    }
    Ok(clusters)
}

/// A finite union of intervals and singleton points on the real line.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct BorelQuery {
    pub intervals: Vec<Interval>,
    pub singletons: Vec<f64>,
}

/// An interval with optionally infinite, optionally closed endpoints.
/// In JSON, omitted endpoints mean unbounded and omitted closedness flags
/// mean open.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Interval {
    /// Lower endpoint; `-inf` for an unbounded-below interval.
    pub lo: f64,
    /// Upper endpoint; `+inf` for an unbounded-above interval.
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Default for Interval {
    fn default() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            lo_closed: false,
            hi_closed: false,
        }
    }
}

impl BorelQuery {
    /// The empty set.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The whole real line.
    pub fn all() -> Self {
        Self {
            intervals: vec![Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
                lo_closed: false,
                hi_closed: false,
            }],
            singletons: Vec::new(),
        }
    }

    /// A single closed interval `[lo, hi]`.
    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(
            vec![Interval {
                lo,
                hi,
                lo_closed: true,
                hi_closed: true,
            }],
            Vec::new(),
        )
    }

    /// A finite set of points.
    pub fn points(points: Vec<f64>) -> Self {
        Self {
            intervals: Vec::new(),
            singletons: points,
        }
    }

    pub fn new(intervals: Vec<Interval>, singletons: Vec<f64>) -> Result<Self> {
        let query = Self {
            intervals,
            singletons,
        };
        query.validate()?;
        Ok(query)
    }

    /// Check endpoint well-formedness (`lo <= hi`, no NaNs).
    pub fn validate(&self) -> Result<()> {
        for iv in &self.intervals {
            if iv.lo.is_nan() || iv.hi.is_nan() || iv.lo > iv.hi {
                return Err(Error::MalformedQuery(format!(
                    "bad interval endpoints: {} .. {}",
                    iv.lo, iv.hi
                )));
            }
        }
        if self.singletons.iter().any(|x| x.is_nan()) {
            return Err(Error::MalformedQuery("NaN singleton".into()));
        }
        Ok(())
    }

    pub fn contains(&self, x: f64) -> bool {
        for iv in &self.intervals {
            let above = if iv.lo_closed { x >= iv.lo } else { x > iv.lo };
            let below = if iv.hi_closed { x <= iv.hi } else { x < iv.hi };
            if above && below {
                return true;
            }
        }
        self.singletons.contains(&x)
    }
}

/// One atom of a geometric density matrix: a positive weight `a_k` with a
/// nonzero subspace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityAtom {
    pub weight: f64,
    pub subspace: Subspace,
}

/// The projective-space form of a density operator.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "DensityRepr", into = "DensityRepr")]
pub struct GeometricDensityMatrix {
    ambient_dim: usize,
    atoms: Vec<DensityAtom>,
}

impl GeometricDensityMatrix {
    pub fn new(ambient_dim: usize, mut atoms: Vec<DensityAtom>, tol: f64) -> Result<Self> {
        atoms.sort_by(|a, b| a.weight.total_cmp(&b.weight));
        for atom in &atoms {
            if atom.weight <= 0.0 {
                return Err(Error::InvalidAtoms(format!(
                    "density weights must be strictly positive, got {}",
                    atom.weight
                )));
            }
            if atom.subspace.is_zero() {
                return Err(Error::InvalidAtoms(
                    "density atoms must carry nonzero subspaces".into(),
                ));
            }
            if atom.subspace.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    left: atom.subspace.ambient_dim(),
                    right: ambient_dim,
                });
            }
        }
        for pair in atoms.windows(2) {
            if pair[0].weight >= pair[1].weight {
                return Err(Error::InvalidAtoms(format!(
                    "density weights must be distinct, got {} twice",
                    pair[0].weight
                )));
            }
        }
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                let deviation = operator_norm(
                    &(atoms[i].subspace.projector() * atoms[j].subspace.projector()),
                );
                if deviation > tol {
                    return Err(Error::NotOrthogonal { i, j, deviation });
                }
            }
        }
        let sum: f64 = atoms
            .iter()
            .map(|a| (1 + a.subspace.projective_dim()) as f64 * a.weight)
            .sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceCondition { sum });
        }
        Ok(Self { ambient_dim, atoms })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn atoms(&self) -> &[DensityAtom] {
        &self.atoms
    }

    /// A single rank-1 atom of weight 1, the geometric form of a pure state.
    pub fn is_pure(&self) -> bool {
        self.atoms.len() == 1
            && self.atoms[0].subspace.hilbert_dim() == 1
            && (self.atoms[0].weight - 1.0).abs() <= TRACE_TOL
    }
}

/// A density operator: Hermitian, positive semidefinite, trace 1.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (values, _) = hermitian_eig(&matrix)?;
        if let Some(&min) = values.last() {
            if min < -1e-10 {
                return Err(Error::NotPositive {
                    min_eigenvalue: min,
                });
            }
        }
        let trace: f64 = (0..matrix.nrows()).map(|i| matrix[(i, i)].re).sum();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// The density operator `Σ_k a_k·P_{S_k}` of a geometric density matrix.
pub fn density_to_operator(rho: &GeometricDensityMatrix) -> DensityOperator {
    let d = rho.ambient_dim();
    let mut m = CMatrix::zeros(d, d);
    for atom in rho.atoms() {
        m += atom.subspace.projector() * C64::new(atom.weight, 0.0);
    }
    DensityOperator { matrix: m }
}

/// The geometric density matrix of a density operator: positive spectral
/// clusters (merged within `tol`) become atoms; zero-eigenvalue mass is
/// dropped.
pub fn operator_to_density(d: &DensityOperator, tol: f64) -> Result<GeometricDensityMatrix> {
    let clusters = eigen_clusters(d.matrix())?;
    let atoms: Vec<DensityAtom> = clusters
        .into_iter()
        .filter(|(value, _)| *value > ZERO_WEIGHT_CUT)
        .map(|(value, subspace)| DensityAtom {
            weight: value,
            subspace,
        })
        .collect();
    GeometricDensityMatrix::new(d.ambient_dim(), atoms, tol)
}

/// `P_ρ(E) = Tr(Eρ)`, the Born probability in a mixed state.
pub fn prob_density(rho: &GeometricDensityMatrix, e: &Event) -> Result<f64> {
    if rho.ambient_dim() != e.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: rho.ambient_dim(),
            right: e.ambient_dim(),
        });
    }
    let op = density_to_operator(rho);
    let product = e.projector() * op.matrix();
    Ok((0..product.nrows()).map(|i| product[(i, i)].re).sum())
}

// JSON shapes: {"atoms": [{"value": x, "subspace": ...}]} for observables
// and {"atoms": [{"a": x, "subspace": ...}]} for densities.
#[derive(Serialize, Deserialize)]
struct ObservableRepr {
    ambient_dim: usize,
    atoms: Vec<ObservableAtomRepr>,
}

#[derive(Serialize, Deserialize)]
struct ObservableAtomRepr {
    value: f64,
    subspace: Subspace,
}

impl From<GeometricObservable> for ObservableRepr {
    fn from(obs: GeometricObservable) -> Self {
        Self {
            ambient_dim: obs.ambient_dim,
            atoms: obs
                .atoms
                .into_iter()
                .map(|a| ObservableAtomRepr {
                    value: a.value,
                    subspace: a.subspace,
                })
                .collect(),
        }
    }
}

impl TryFrom<ObservableRepr> for GeometricObservable {
    type Error = String;
    fn try_from(repr: ObservableRepr) -> std::result::Result<Self, String> {
        GeometricObservable::new(
            repr.ambient_dim,
            repr.atoms
                .into_iter()
                .map(|a| ObservableAtom {
                    value: a.value,
                    subspace: a.subspace,
                })
                .collect(),
            EIGENVALUE_MERGE_TOL,
        )
        .map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct DensityRepr {
    ambient_dim: usize,
    atoms: Vec<DensityAtomRepr>,
}

#[derive(Serialize, Deserialize)]
struct DensityAtomRepr {
    a: f64,
    subspace: Subspace,
}

impl From<GeometricDensityMatrix> for DensityRepr {
    fn from(rho: GeometricDensityMatrix) -> Self {
        Self {
            ambient_dim: rho.ambient_dim,
            atoms: rho
                .atoms
                .into_iter()
                .map(|a| DensityAtomRepr {
                    a: a.weight,
                    subspace: a.subspace,
                })
                .collect(),
        }
    }
}

impl TryFrom<DensityRepr> for GeometricDensityMatrix {
    type Error = String;
    fn try_from(repr: DensityRepr) -> std::result::Result<Self, String> {
        GeometricDensityMatrix::new(
            repr.ambient_dim,
            repr.atoms
                .into_iter()
                .map(|a| DensityAtom {
                    weight: a.a,
                    subspace: a.subspace,
                })
                .collect(),
            EIGENVALUE_MERGE_TOL,
        )
        .map_err(|e| e.to_string())
    }
}
