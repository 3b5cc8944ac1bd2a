//! Invariant amplitudes on point sequences, expected values, and lower
//! symbols.
//!
//! The amplitude of an ordered sequence of projective points is the cyclic
//! product of consecutive inner products of unit representatives, closed by
//! the wrap-around factor:
//!
//! `A_n(p₁,…,p_n) = ⟨ψ₁,ψ₂⟩⟨ψ₂,ψ₃⟩⋯⟨ψ_{n-1},ψ_n⟩⟨ψ_n,ψ₁⟩`
//!
//! The value does not depend on the representatives chosen, is invariant
//! under cyclic rotation and under a common unitary applied to every point,
//! conjugates under order reversal, and lies in the closed unit disc.
//!
//! The expected value `𝔼_p(T) = ⟨ψ, Tψ⟩` and the lower symbol
//! `σ(T)(p) = 𝔼_p(T)` connect amplitudes to operators; `σ` is injective,
//! which [`reconstruct_from_quadratic_form`] realizes through the
//! polarization identity.

use crate::error::{Error, Result};
use crate::events::StatePoint;
use crate::linalg::{hermitian_eig, inner, C64, CMatrix, CVector};

/// An ordered, non-empty sequence of projective points over one ambient
/// dimension. Points may repeat.
#[derive(Clone, Debug)]
pub struct PointSequence {
    points: Vec<StatePoint>,
}

impl PointSequence {
    pub fn new(points: Vec<StatePoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySequence)?;
        let dim = first.ambient_dim();
        for p in &points {
            if p.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.ambient_dim(),
                });
            }
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[StatePoint] {
        &self.points
    }

    /// The sequence rotated left by `k` places.
    pub fn rotated(&self, k: usize) -> PointSequence {
        let n = self.points.len();
        let points = (0..n).map(|i| self.points[(i + k) % n].clone()).collect();
        PointSequence { points }
    }

    /// The sequence in reverse order.
    pub fn reversed(&self) -> PointSequence {
        let mut points = self.points.clone();
        points.reverse();
        PointSequence { points }
    }
}

/// An amplitude value: a complex number in the closed unit disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitude {
    value: C64,
}

impl Amplitude {
    pub(crate) fn new(value: C64) -> Self {
        debug_assert!(value.norm() <= 1.0 + 1e-12);
        Self { value }
    }

    pub fn value(&self) -> C64 {
        self.value
    }

    /// `|A_n|²`, exposed without any physical interpretation attached.
    pub fn abs_sq(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// The amplitude `A_n` of a point sequence: the cyclic product of
/// consecutive inner products of the canonical representatives.
/// `A₁(p) = 1` for every point.
pub fn amplitude(seq: &PointSequence) -> Amplitude {
    let points = seq.points();
    let n = points.len();
    let mut product = C64::new(1.0, 0.0);
    for k in 0..n {
        let a = points[k].representative();
        let b = points[(k + 1) % n].representative();
        product *= a.dotc(b);
    }
    Amplitude::new(product)
}

/// Expected value `𝔼_p(T) = ⟨ψ, Tψ⟩` of a (not necessarily self-adjoint)
/// operator in the state `p`.
pub fn expected_value(p: &StatePoint, t: &CMatrix) -> Result<C64> {
    if t.nrows() != t.ncols() {
        return Err(Error::NotSquare {
            rows: t.nrows(),
            cols: t.ncols(),
        });
    }
    if t.ncols() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: t.ncols(),
            right: p.ambient_dim(),
        });
    }
    let psi = p.representative();
    inner(psi, &(t * psi))
}

/// Sampled sup of the lower symbol: `max_p |𝔼_p(T)|` over the given
/// points. Always a lower bound on the operator norm.
pub fn lower_symbol_sup(t: &CMatrix, sample_points: &[StatePoint]) -> Result<f64> {
    if sample_points.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut best = 0.0_f64;
    for p in sample_points {
        best = best.max(expected_value(p, t)?.norm());
    }
    Ok(best)
}

/// Exact sup of the lower symbol for Hermitian operators: the spectral
/// radius, attained at an extreme eigenstate.
pub fn lower_symbol_sup_exact(t: &CMatrix) -> Result<f64> {
    let (values, _) = hermitian_eig(t)?;
    Ok(values.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs())))
}

/// Recover the operator behind a quadratic form `q(v) = ⟨v, Tv⟩`.
///
/// Diagonal entries come from `q(e_j)` directly; off-diagonal entries from
/// the four-term polarization combination of `q` at `e_k ± e_j` and
/// `e_k ± i·e_j`, matching the conjugate-linear-first inner product:
///
/// `⟨u, Tv⟩ = ¼·(q(v+u) − q(v−u) + i·q(v+iu) − i·q(v−iu))`
///
/// Garbage in, garbage out when `q` is not a quadratic form.
pub fn reconstruct_from_quadratic_form<F>(mut q: F, dim: usize) -> CMatrix
where
    F: FnMut(&CVector) -> C64,
{
    let unit = |i: usize| {
        let mut v = CVector::zeros(dim);
        v[i] = C64::new(1.0, 0.0);
        v
    };
    let i_unit = C64::new(0.0, 1.0);
    let quarter = C64::new(0.25, 0.0);

    let mut t = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        for k in 0..dim {
            if j == k {
                t[(j, j)] = q(&unit(j));
                continue;
            }
            // T_{jk} = ⟨e_j, T e_k⟩ with u = e_j, v = e_k.
            let u = unit(j);
            let v = unit(k);
            let q1 = q(&(&v + &u));
            let q2 = q(&(&v - &u));
            let q3 = q(&(&v + &u * i_unit));
            let q4 = q(&(&v - &u * i_unit));
            t[(j, k)] = quarter * (q1 - q2 + i_unit * (q3 - q4));
        }
    }
    t
}

/// The amplitude through the lower symbol: `A_n = 𝔼_{p₁}(|ψ₂⟩⟨ψ₂|⋯|ψ_n⟩⟨ψ_n|)`.
/// Needs at least two points; cross-validates [`amplitude`].
pub fn amplitude_via_symbol(seq: &PointSequence) -> Result<Amplitude> {
    let points = seq.points();
    if points.len() < 2 {
        return Err(Error::SingletonSequence);
    }
    let d = points[0].ambient_dim();
    let mut product = CMatrix::identity(d, d);
    for p in &points[1..] {
        let psi = p.representative();
        let projector = psi * psi.adjoint();
        product *= projector;
    }
    let value = expected_value(&points[0], &product)?;
    Ok(Amplitude::new(value))
}
