//! Probability functionals on events and states.
//!
//! Born probabilities, consecutive probabilities (Wigner's rule) in their
//! vector, basis-expansion, and operator-norm forms, time-dependent
//! evolution with contraction propagators, conditional probability with the
//! collapse rule, order-dependent independence, σ-additivity with
//! interference cross terms, and the geodesic distance between points.
//!
//! Products `E_n⋯E₁ψ` are evaluated right to left as matrix-vector
//! products; only the operator-norm forms build the full operator product.

use crate::error::{Error, Result};
use crate::events::{Event, StatePoint, Subspace};
use crate::linalg::{inner, operator_norm, C64, CMatrix, CVector};

/// Slack allowed above 1 when validating propagator contractions;
/// matrix exponentials of Hermitian generators drift at this scale.
pub const CONTRACTION_TOL: f64 = 1e-9;

/// A time-ordered, non-empty sequence of events over one ambient dimension;
/// the first event occurs first.
#[derive(Clone, Debug)]
pub struct EventSequence {
    events: Vec<Event>,
}

impl EventSequence {
    pub fn new(events: Vec<Event>) -> Result<Self> {
        let first = events.first().ok_or(Error::EmptySequence)?;
        let dim = first.ambient_dim();
        for e in &events {
            if e.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: e.ambient_dim(),
                });
            }
        }
        Ok(Self { events })
    }

    pub fn ambient_dim(&self) -> usize {
        self.events[0].ambient_dim()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }
}

/// A time-dependent measurement protocol: an initial event, then
/// alternating propagators and events. Every propagator must be a
/// contraction (operator norm at most `1 + CONTRACTION_TOL`).
#[derive(Clone, Debug)]
pub struct TimedSequence {
    initial: Event,
    steps: Vec<(CMatrix, Event)>,
}

impl TimedSequence {
    pub fn new(initial: Event, steps: Vec<(CMatrix, Event)>) -> Result<Self> {
        let dim = initial.ambient_dim();
        for (u, e) in &steps {
            if u.nrows() != dim || u.ncols() != dim || e.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: u.nrows().max(e.ambient_dim()),
                });
            }
            let norm = operator_norm(u);
            if norm > 1.0 + CONTRACTION_TOL {
                return Err(Error::NotAContraction { norm });
            }
        }
        Ok(Self { initial, steps })
    }

    pub fn initial(&self) -> &Event {
        &self.initial
    }

    pub fn steps(&self) -> &[(CMatrix, Event)] {
        &self.steps
    }
}

/// Decomposition of a joined-event probability into diagonal probabilities
/// and interference cross terms: `total = Σ diagonal + Σ cross`.
#[derive(Clone, Debug)]
pub struct InterferenceReport {
    pub total: f64,
    pub diagonal: Vec<f64>,
    pub cross_terms: Vec<(usize, usize, C64)>,
}

impl InterferenceReport {
    /// Sum of all cross terms (real up to numerical noise).
    pub fn cross_sum(&self) -> C64 {
        self.cross_terms
            .iter()
            .fold(C64::new(0.0, 0.0), |acc, &(_, _, z)| acc + z)
    }

    /// `Σ diagonal + Re Σ cross`, which reproduces `total`.
    pub fn reconstructed_total(&self) -> f64 {
        self.diagonal.iter().sum::<f64>() + self.cross_sum().re
    }
}

/// Outcome of a quantum independence test for an ordered event pair.
#[derive(Clone, Copy, Debug)]
pub struct IndependenceCheck {
    /// `|lhs - rhs| <= tol`; entanglement is the negation.
    pub independent: bool,
    /// `P_ψ(E₁, E₂)`.
    pub lhs: f64,
    /// `P_ψ(E₁)·P_ψ(E₂)`.
    pub rhs: f64,
}

fn check_dims(psi: &StatePoint, dim: usize) -> Result<()> {
    if psi.ambient_dim() != dim {
        return Err(Error::DimensionMismatch {
            left: psi.ambient_dim(),
            right: dim,
        });
    }
    Ok(())
}

/// Born's rule: `P_ψ(E) = ‖Eψ‖²`.
pub fn born(psi: &StatePoint, e: &Event) -> Result<f64> {
    check_dims(psi, e.ambient_dim())?;
    Ok(e.apply(psi.representative()).norm_squared())
}

/// Wigner's rule: `P_ψ(E₁,…,E_n) = ‖E_n⋯E₁ψ‖²`.
pub fn consecutive(psi: &StatePoint, seq: &EventSequence) -> Result<f64> {
    check_dims(psi, seq.ambient_dim())?;
    let mut v = psi.representative().clone();
    for e in seq.events() {
        v = e.apply(&v);
    }
    Ok(v.norm_squared())
}

/// The two-event consecutive probability as a literal basis expansion:
///
/// `Σ_{k,j,m} ⟨ψ,β_k⟩⟨β_k,α_j⟩⟨α_j,β_m⟩⟨β_m,ψ⟩`
///
/// over any orthonormal bases `{β_k}` of `Ran E₁` and `{α_j}` of `Ran E₂`.
/// This is the independent cross-check of basis independence, not the
/// production path; use [`consecutive`] for that.
pub fn consecutive_via_bases(
    psi: &StatePoint,
    e1: &Event,
    e2: &Event,
    basis1: &CMatrix,
    basis2: &CMatrix,
    tol: f64,
) -> Result<f64> {
    check_dims(psi, e1.ambient_dim())?;
    check_dims(psi, e2.ambient_dim())?;
    validate_range_basis(e1, basis1, tol)?;
    validate_range_basis(e2, basis2, tol)?;

    let betas: Vec<CVector> = basis1.column_iter().map(|c| c.into_owned()).collect();
    let alphas: Vec<CVector> = basis2.column_iter().map(|c| c.into_owned()).collect();
    let psi_vec = psi.representative();

    let mut sum = C64::new(0.0, 0.0);
    for beta_k in &betas {
        for alpha_j in &alphas {
            for beta_m in &betas {
                let term = inner(psi_vec, beta_k)?
                    * inner(beta_k, alpha_j)?
                    * inner(alpha_j, beta_m)?
                    * inner(beta_m, psi_vec)?;
                sum += term;
            }
        }
    }
    Ok(sum.re)
}

fn validate_range_basis(e: &Event, basis: &CMatrix, tol: f64) -> Result<()> {
    if basis.nrows() != e.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: basis.nrows(),
            right: e.ambient_dim(),
        });
    }
    if basis.ncols() != e.rank() {
        return Err(Error::NotABasis {
            reason: format!(
                "basis has {} columns, event range has dimension {}",
                basis.ncols(),
                e.rank()
            ),
        });
    }
    let gram = basis.adjoint() * basis;
    let id = CMatrix::identity(basis.ncols(), basis.ncols());
    if crate::linalg::max_abs(&(gram - id)) > tol.max(1e-9) {
        return Err(Error::NotABasis {
            reason: "columns are not orthonormal".into(),
        });
    }
    for col in basis.column_iter() {
        let col = col.into_owned();
        if (e.apply(&col) - &col).norm() > tol.max(1e-9) {
            return Err(Error::NotABasis {
                reason: "columns do not lie in the event range".into(),
            });
        }
    }
    Ok(())
}

/// Conditional probability `P_ψ(E₂|E₁) = P_ψ(E₁,E₂)/P_ψ(E₁)`, defined as 0
/// when the condition has probability at most `tol`.
pub fn conditional(psi: &StatePoint, e1: &Event, e2: &Event, tol: f64) -> Result<f64> {
    let p1 = born(psi, e1)?;
    if p1 <= tol {
        return Ok(0.0);
    }
    let seq = EventSequence::new(vec![e1.clone(), e2.clone()])?;
    Ok(consecutive(psi, &seq)? / p1)
}

/// Collapse `ψ ↦ E₁ψ/‖E₁ψ‖`; errors when the event annihilates the state
/// (probability at most `tol`), which signals the conditional-probability
/// zero branch.
pub fn collapse(psi: &StatePoint, e: &Event, tol: f64) -> Result<StatePoint> {
    let p = born(psi, e)?;
    if p <= tol {
        return Err(Error::AnnihilatedState { probability: p });
    }
    StatePoint::new(&e.apply(psi.representative()), tol)
}

/// Quantum independence of the ordered pair `(E₁, E₂)`:
/// `P_ψ(E₁,E₂) = P_ψ(E₁)·P_ψ(E₂)` within `tol`. The ordering matters.
pub fn independence(
    psi: &StatePoint,
    e1: &Event,
    e2: &Event,
    tol: f64,
) -> Result<IndependenceCheck> {
    let seq = EventSequence::new(vec![e1.clone(), e2.clone()])?;
    let lhs = consecutive(psi, &seq)?;
    let rhs = born(psi, e1)? * born(psi, e2)?;
    Ok(IndependenceCheck {
        independent: (lhs - rhs).abs() <= tol,
        lhs,
        rhs,
    })
}

/// State-free consecutive probability `P(E₀,…,E_n) = ‖E_n⋯E₁E₀‖²_op`,
/// where the first element of `seq` plays the role of the prepared event.
pub fn consecutive_events(seq: &EventSequence) -> Result<f64> {
    let d = seq.ambient_dim();
    let mut product = CMatrix::identity(d, d);
    for e in seq.events() {
        product = e.projector() * product;
    }
    let norm = operator_norm(&product);
    Ok(norm * norm)
}

/// Time-dependent Wigner's rule `‖E_n U_{n,n-1}E_{n-1}⋯E₁U_{1,0}E₀‖²_op`.
///
/// Contraction validation happens in [`TimedSequence::new`]; composing an
/// extra unitary to the right of `E₀` or to the left of `E_n` leaves the
/// value unchanged.
pub fn timed_consecutive(t: &TimedSequence) -> f64 {
    let mut product = t.initial().projector().clone();
    for (u, e) in t.steps() {
        product = e.projector() * u * product;
    }
    let norm = operator_norm(&product);
    norm * norm
}

/// σ-additivity with interference: decompose `P_ψ(Σ_j E_j, E)` into the
/// diagonal probabilities `P_ψ(E_j, E)` and the cross terms
/// `⟨EE_jψ, EE_kψ⟩` for `j ≠ k`. The parts must be pairwise orthogonal
/// within `tol`.
pub fn interference(
    psi: &StatePoint,
    parts: &[Event],
    e: &Event,
    tol: f64,
) -> Result<InterferenceReport> {
    let d = e.ambient_dim();
    check_dims(psi, d)?;
    for p in parts {
        if p.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                left: p.ambient_dim(),
                right: d,
            });
        }
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            let deviation = operator_norm(&(parts[i].projector() * parts[j].projector()));
            if deviation > tol {
                return Err(Error::NotOrthogonal { i, j, deviation });
            }
        }
    }

    let mut joined = Subspace::zero(d);
    for p in parts {
        joined = joined.join(p.range(), tol)?;
    }
    let joined_event = Event::from_subspace(joined);
    let total = consecutive(
        psi,
        &EventSequence::new(vec![joined_event, e.clone()])?,
    )?;

    let mut diagonal = Vec::with_capacity(parts.len());
    let mut projected: Vec<CVector> = Vec::with_capacity(parts.len());
    for p in parts {
        let w = e.apply(&p.apply(psi.representative()));
        diagonal.push(w.norm_squared());
        projected.push(w);
    }

    let mut cross_terms = Vec::new();
    for j in 0..parts.len() {
        for k in 0..parts.len() {
            if j != k {
                cross_terms.push((j, k, inner(&projected[j], &projected[k])?));
            }
        }
    }

    Ok(InterferenceReport {
        total,
        diagonal,
        cross_terms,
    })
}

/// Fubini–Study geodesic distance `arccos|⟨ψ_p, ψ_q⟩|`, with range
/// `[0, π/2]`; orthogonal points are maximally separated.
pub fn geodesic_distance(p: &StatePoint, q: &StatePoint) -> Result<f64> {
    let overlap = inner(p.representative(), q.representative())?.norm();
    Ok(overlap.clamp(0.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::basis_vector;
    use crate::linalg::DEFAULT_TOL;
    use crate::random;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex;
    use proptest::prelude::*;

    fn e1_state() -> StatePoint {
        StatePoint::new(&basis_vector(2, 0), DEFAULT_TOL).unwrap()
    }

    fn plus_vec() -> CVector {
        CVector::from_vec(vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)])
    }

    fn plus_event() -> Event {
        Event::ray(&plus_vec(), DEFAULT_TOL).unwrap()
    }

    fn axis_event(i: usize) -> Event {
        Event::ray(&basis_vector(2, i), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn born_eigenstate_and_symmetry() {
        let psi = e1_state();
        assert_abs_diff_eq!(born(&psi, &axis_event(0)).unwrap(), 1.0, epsilon = 1e-12);

        let plus = StatePoint::new(&plus_vec(), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(born(&plus, &axis_event(0)).unwrap(), 0.5, epsilon = 1e-12);

        assert_abs_diff_eq!(born(&psi, &Event::zero(2)).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn born_agrees_with_any_range_basis_sum() {
        // Eq-style expansion: Σ_j |⟨α_j, ψ⟩|² over a basis of Ran E.
        for seed in 0..10u64 {
            let d = 4;
            let psi = random::random_state(d, seed);
            let e = random::random_event(d, 2, seed + 50);
            let u = crate::linalg::random_unitary(2, seed + 99);
            let rotated = e.range().basis() * u;
            let total: f64 = rotated
                .column_iter()
                .map(|a| {
                    inner(&a.into_owned(), psi.representative())
                        .unwrap()
                        .norm_sqr()
                })
                .sum();
            assert_abs_diff_eq!(born(&psi, &e).unwrap(), total, epsilon = 1e-10);
        }
    }

    #[test]
    fn consecutive_two_event_quarter() {
        // ψ=e1, E₁=|+⟩⟨+|, E₂=|e2⟩⟨e2|: direct evaluation gives 1/4.
        let seq = EventSequence::new(vec![plus_event(), axis_event(1)]).unwrap();
        assert_abs_diff_eq!(
            consecutive(&e1_state(), &seq).unwrap(),
            0.25,
            epsilon = 1e-12
        );
    }

    #[test]
    fn consecutive_orthogonal_and_identity() {
        let ortho = EventSequence::new(vec![axis_event(0), axis_event(1)]).unwrap();
        assert_abs_diff_eq!(consecutive(&e1_state(), &ortho).unwrap(), 0.0, epsilon = 1e-15);

        let ids = EventSequence::new(vec![
            Event::identity(2),
            Event::identity(2),
            Event::identity(2),
        ])
        .unwrap();
        assert_abs_diff_eq!(consecutive(&e1_state(), &ids).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn basis_expansion_matches_consecutive() {
        let psi = e1_state();
        let e1 = plus_event();
        let e2 = axis_event(1);
        let v = consecutive_via_bases(
            &psi,
            &e1,
            &e2,
            e1.range().basis(),
            e2.range().basis(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_abs_diff_eq!(v, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn basis_expansion_is_basis_independent() {
        for seed in 0..10u64 {
            let d = 4;
            let psi = random::random_state(d, seed);
            let e1 = random::random_event(d, 2, seed + 10);
            let e2 = random::random_event(d, 3, seed + 20);
            let reference = consecutive(
                &psi,
                &EventSequence::new(vec![e1.clone(), e2.clone()]).unwrap(),
            )
            .unwrap();

            let u1 = crate::linalg::random_unitary(2, seed + 30);
            let u2 = crate::linalg::random_unitary(3, seed + 31);
            let b1 = e1.range().basis() * u1;
            let b2 = e2.range().basis() * u2;
            let v = consecutive_via_bases(&psi, &e1, &e2, &b1, &b2, DEFAULT_TOL).unwrap();
            assert_abs_diff_eq!(v, reference, epsilon = 1e-9);
        }
    }

    #[test]
    fn basis_expansion_with_zero_event() {
        let psi = e1_state();
        let e1 = axis_event(0);
        let e2 = Event::zero(2);
        let v = consecutive_via_bases(
            &psi,
            &e1,
            &e2,
            e1.range().basis(),
            e2.range().basis(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn basis_expansion_rejects_wrong_basis() {
        let psi = e1_state();
        let e1 = plus_event();
        let e2 = axis_event(1);
        // A basis of the wrong range.
        let wrong = axis_event(0).range().basis().clone();
        assert!(matches!(
            consecutive_via_bases(&psi, &e1, &e2, &wrong, e2.range().basis(), DEFAULT_TOL),
            Err(Error::NotABasis { .. })
        ));
    }

    #[test]
    fn conditional_derived_half() {
        // (1/4)/(1/2) = 1/2.
        let v = conditional(&e1_state(), &plus_event(), &axis_event(1), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn conditional_zero_probability_branch() {
        let v = conditional(&e1_state(), &axis_event(1), &plus_event(), DEFAULT_TOL).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn conditioning_on_the_sure_event_is_born() {
        for seed in 0..5u64 {
            let psi = random::random_state(3, seed);
            let e2 = random::random_event(3, 2, seed + 7);
            let lhs = conditional(&psi, &Event::identity(3), &e2, DEFAULT_TOL).unwrap();
            let rhs = born(&psi, &e2).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn collapse_fixed_point_and_projection() {
        let psi = e1_state();
        let fixed = collapse(&psi, &axis_event(0), DEFAULT_TOL).unwrap();
        assert!((fixed.representative() - psi.representative()).norm() <= 1e-12);

        let onto_plus = collapse(&psi, &plus_event(), DEFAULT_TOL).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(onto_plus.representative()[0].re, s, epsilon = 1e-12);
        assert_abs_diff_eq!(onto_plus.representative()[1].re, s, epsilon = 1e-12);

        // Idempotence.
        let twice = collapse(&onto_plus, &plus_event(), DEFAULT_TOL).unwrap();
        assert!((twice.representative() - onto_plus.representative()).norm() <= 1e-12);
    }

    #[test]
    fn collapse_on_annihilating_event_errors() {
        assert!(matches!(
            collapse(&e1_state(), &axis_event(1), DEFAULT_TOL),
            Err(Error::AnnihilatedState { .. })
        ));
    }

    #[test]
    fn independence_is_order_asymmetric() {
        // (E₁,E₂) = (|+⟩⟨+|, |e1⟩⟨e1|) is entangled: 0.25 vs 0.5.
        let fwd = independence(&e1_state(), &plus_event(), &axis_event(0), DEFAULT_TOL).unwrap();
        assert!(!fwd.independent);
        assert_abs_diff_eq!(fwd.lhs, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(fwd.rhs, 0.5, epsilon = 1e-12);

        // The swapped order is independent: 0.5 vs 0.5.
        let rev = independence(&e1_state(), &axis_event(0), &plus_event(), DEFAULT_TOL).unwrap();
        assert!(rev.independent);
        assert_abs_diff_eq!(rev.lhs, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rev.rhs, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn sure_event_first_is_always_independent() {
        for seed in 0..5u64 {
            let psi = random::random_state(3, seed + 3);
            let e2 = random::random_event(3, 1, seed + 8);
            let check = independence(&psi, &Event::identity(3), &e2, DEFAULT_TOL).unwrap();
            assert!(check.independent);
        }
    }

    #[test]
    fn consecutive_events_rank_one_preparation() {
        // ‖E₁E₀‖_op = 1/√2 for E₀=|e1⟩⟨e1|, E₁=|+⟩⟨+|.
        let seq = EventSequence::new(vec![axis_event(0), plus_event()]).unwrap();
        assert_abs_diff_eq!(consecutive_events(&seq).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn single_nonzero_event_has_probability_one() {
        for seed in 0..5u64 {
            let e = random::random_event(4, (seed % 3) as usize + 1, seed + 60);
            let seq = EventSequence::new(vec![e]).unwrap();
            assert_abs_diff_eq!(consecutive_events(&seq).unwrap(), 1.0, epsilon = 1e-10);
        }
        let zero = EventSequence::new(vec![Event::zero(3)]).unwrap();
        assert_eq!(consecutive_events(&zero).unwrap(), 0.0);
    }

    #[test]
    fn orthogonal_adjacent_events_kill_the_sequence() {
        let seq =
            EventSequence::new(vec![axis_event(0), axis_event(1), plus_event()]).unwrap();
        assert_abs_diff_eq!(consecutive_events(&seq).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn timed_identity_propagators_reduce_to_events() {
        let id = CMatrix::identity(2, 2);
        let t = TimedSequence::new(
            axis_event(0),
            vec![(id.clone(), plus_event()), (id, axis_event(1))],
        )
        .unwrap();
        let plain = EventSequence::new(vec![axis_event(0), plus_event(), axis_event(1)]).unwrap();
        assert_abs_diff_eq!(
            timed_consecutive(&t),
            consecutive_events(&plain).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn timed_rotation_realigns_orthogonal_events() {
        // U maps e1 to e2, so E₁=|e2⟩⟨e2| after U sees the full ray.
        let mut u = CMatrix::zeros(2, 2);
        u[(1, 0)] = C64::new(1.0, 0.0);
        u[(0, 1)] = C64::new(-1.0, 0.0);
        let t = TimedSequence::new(axis_event(0), vec![(u, axis_event(1))]).unwrap();
        assert_abs_diff_eq!(timed_consecutive(&t), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn timed_rejects_expanding_propagators() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 0)] = C64::new(1.5, 0.0);
        assert!(matches!(
            TimedSequence::new(axis_event(0), vec![(m, axis_event(1))]),
            Err(Error::NotAContraction { .. })
        ));
    }

    #[test]
    fn outward_unitaries_are_absorbed() {
        for seed in 0..5u64 {
            let d = 3;
            let e0 = random::random_event(d, 1, seed);
            let e1 = random::random_event(d, 2, seed + 1);
            let u = crate::linalg::random_unitary(d, seed + 2);
            let extra = crate::linalg::random_unitary(d, seed + 3);

            let base = TimedSequence::new(e0.clone(), vec![(u.clone(), e1.clone())]).unwrap();
            let reference = timed_consecutive(&base);

            // Evolution prior to E₀: start from the sure event and reach E₀
            // through the extra unitary. The product gains a ⋯E₀·V tail.
            let before = TimedSequence::new(
                Event::identity(d),
                vec![(extra.clone(), e0.clone()), (u.clone(), e1.clone())],
            )
            .unwrap();
            assert_abs_diff_eq!(timed_consecutive(&before), reference, epsilon = 1e-9);

            // Evolution after E_n: append the extra unitary followed by the
            // sure event, so the product gains a W·… head.
            let after = TimedSequence::new(
                e0.clone(),
                vec![(u.clone(), e1.clone()), (extra.clone(), Event::identity(d))],
            )
            .unwrap();
            assert_abs_diff_eq!(timed_consecutive(&after), reference, epsilon = 1e-9);
        }
    }

    #[test]
    fn interference_symmetric_instance() {
        // ψ=+, parts=(|e1⟩⟨e1|, |e2⟩⟨e2|), E=|+⟩⟨+|:
        // total 1, diagonal (1/4, 1/4), cross sum 1/2.
        let plus = StatePoint::new(&plus_vec(), DEFAULT_TOL).unwrap();
        let report = interference(
            &plus,
            &[axis_event(0), axis_event(1)],
            &plus_event(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_abs_diff_eq!(report.total, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.diagonal[0], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(report.diagonal[1], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(report.cross_sum().re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(report.cross_sum().im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.reconstructed_total(), report.total, epsilon = 1e-9);
    }

    #[test]
    fn interference_with_zero_part_has_zero_cross_terms() {
        let plus = StatePoint::new(&plus_vec(), DEFAULT_TOL).unwrap();
        let report = interference(
            &plus,
            &[axis_event(0), Event::zero(2)],
            &plus_event(),
            DEFAULT_TOL,
        )
        .unwrap();
        for &(_, _, z) in &report.cross_terms {
            assert_eq!(z, C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn interference_single_part_is_diagonal() {
        let plus = StatePoint::new(&plus_vec(), DEFAULT_TOL).unwrap();
        let report =
            interference(&plus, &[axis_event(0)], &plus_event(), DEFAULT_TOL).unwrap();
        assert!(report.cross_terms.is_empty());
        assert_abs_diff_eq!(report.total, report.diagonal[0], epsilon = 1e-12);
    }

    #[test]
    fn interference_rejects_overlapping_parts() {
        let plus = StatePoint::new(&plus_vec(), DEFAULT_TOL).unwrap();
        assert!(matches!(
            interference(
                &plus,
                &[axis_event(0), plus_event()],
                &axis_event(1),
                DEFAULT_TOL
            ),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn geodesic_distances() {
        let p = e1_state();
        assert_abs_diff_eq!(geodesic_distance(&p, &p).unwrap(), 0.0, epsilon = 1e-12);

        let q = StatePoint::new(&basis_vector(2, 1), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(
            geodesic_distance(&p, &q).unwrap(),
            std::f64::consts::FRAC_PI_2,
            epsilon = 1e-12
        );

        let plus = StatePoint::new(&plus_vec(), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(
            geodesic_distance(&p, &plus).unwrap(),
            std::f64::consts::FRAC_PI_4,
            epsilon = 1e-12
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn appending_events_never_increases_probability(seed in any::<u64>(), d in 2usize..6) {
            let psi = random::random_state(d, seed);
            let mut events = Vec::new();
            let mut last = 1.0_f64;
            for step in 0..4u64 {
                let rank = ((seed >> (8 * step)) % d as u64) as usize + 1;
                events.push(random::random_event(d, rank.min(d), seed ^ (step + 1)));
                let p = consecutive(&psi, &EventSequence::new(events.clone()).unwrap()).unwrap();
                prop_assert!(p <= last + 1e-12);
                last = p;
            }
        }

        #[test]
        fn repeating_an_event_is_idempotent(seed in any::<u64>(), d in 2usize..6) {
            let psi = random::random_state(d, seed);
            let rank = (seed % d as u64) as usize + 1;
            let e = random::random_event(d, rank.min(d), seed ^ 0x77);
            let once = born(&psi, &e).unwrap();
            let twice = consecutive(
                &psi,
                &EventSequence::new(vec![e.clone(), e]).unwrap(),
            ).unwrap();
            prop_assert!((once - twice).abs() <= 1e-10);
        }

        #[test]
        fn conditional_outcomes_are_normalized(seed in any::<u64>(), d in 2usize..6) {
            let psi = random::random_state(d, seed);
            let rank = (seed % d as u64) as usize + 1;
            let e1 = random::random_event(d, rank.min(d), seed ^ 0x1111);
            let e2 = random::random_event(d, ((seed >> 16) % d as u64) as usize + 1, seed ^ 0x2222);
            if born(&psi, &e1).unwrap() > DEFAULT_TOL {
                let yes = conditional(&psi, &e1, &e2, DEFAULT_TOL).unwrap();
                let no = conditional(&psi, &e1, &e2.complement(), DEFAULT_TOL).unwrap();
                prop_assert!((yes + no - 1.0).abs() <= 1e-9);
            }
        }
    }
}
