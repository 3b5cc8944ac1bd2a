//! Monte Carlo validation of Wigner's rule.
//!
//! Each trajectory walks an event sequence with binary per-step outcomes:
//! the event occurs with its Born probability in the current state, the
//! state collapses onto the event or its complement accordingly, and the
//! all-occurred path frequency estimates the consecutive probability. The
//! sampler is a statistical check of the closed formulas, not a claim
//! about physical process.
//!
//! Sampling is batched with per-batch seeds derived as `seed + batch index`,
//! so a report is deterministic in its seed regardless of how batches are
//! scheduled.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::events::StatePoint;
use crate::prob::{born, collapse, consecutive, EventSequence};

/// Samples per batch; each batch owns an independent ChaCha stream.
const BATCH_SIZE: u64 = 16_384;

/// Final state of a trajectory: a point, or annihilated when a collapse
/// branch carried no probability mass.
#[derive(Clone, Debug)]
pub enum FinalState {
    State(StatePoint),
    Annihilated,
}

/// One simulated run through an event sequence.
#[derive(Clone, Debug)]
pub struct Trajectory {
    /// Per-step outcomes, `true` when the event occurred.
    pub outcomes: Vec<bool>,
    pub final_state: FinalState,
}

/// Aggregated sampling report for the all-occurred path.
#[derive(Clone, Debug)]
pub struct SampleReport {
    pub n_samples: u64,
    /// Counts per outcome path, keyed by strings like `"101"`.
    pub path_counts: BTreeMap<String, u64>,
    /// The closed-form consecutive probability of the all-occurred path.
    pub exact: f64,
    /// Frequency of the all-occurred path.
    pub empirical: f64,
    /// `sqrt(p̂(1-p̂)/n)` for the empirical frequency.
    pub std_error: f64,
}

/// Walk one trajectory: at each step draw "occurred" with the Born
/// probability of the event in the current state, then collapse onto the
/// event or its complement. A branch with probability within `tol` of 0
/// or 1 is taken deterministically.
pub fn sample_trajectory<R: Rng>(
    psi: &StatePoint,
    seq: &EventSequence,
    rng: &mut R,
    tol: f64,
) -> Result<Trajectory> {
    let mut outcomes = Vec::with_capacity(seq.len());
    let mut current = psi.clone();
    for (step, event) in seq.events().iter().enumerate() {
        let p = born(&current, event)?.clamp(0.0, 1.0);
        let occurred = if p <= tol {
            false
        } else if p >= 1.0 - tol {
            true
        } else {
            rng.random::<f64>() < p
        };
        outcomes.push(occurred);
        let projection = if occurred {
            collapse(&current, event, tol)
        } else {
            collapse(&current, &event.complement(), tol)
        };
        match projection {
            Ok(next) => current = next,
            Err(_) => {
                // The chosen branch carries no mass; the remaining events
                // deterministically fail to occur.
                outcomes.extend(std::iter::repeat_n(false, seq.len() - step - 1));
                return Ok(Trajectory {
                    outcomes,
                    final_state: FinalState::Annihilated,
                });
            }
        }
    }
    Ok(Trajectory {
        outcomes,
        final_state: FinalState::State(current),
    })
}

/// Estimate the consecutive probability of `seq` under `psi` from `n`
/// trajectories. Deterministic for a fixed seed; the exact value comes
/// from [`consecutive`].
pub fn estimate(
    psi: &StatePoint,
    seq: &EventSequence,
    n: u64,
    seed: u64,
    tol: f64,
) -> Result<SampleReport> {
    assert!(n >= 1, "estimate needs at least one sample");
    let exact = consecutive(psi, seq)?;

    let mut path_counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut batch_index = 0u64;
    let mut remaining = n;
    while remaining > 0 {
        let batch = remaining.min(BATCH_SIZE);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(batch_index));
        for _ in 0..batch {
            let trajectory = sample_trajectory(psi, seq, &mut rng, tol)?;
            let key: String = trajectory
                .outcomes
                .iter()
                .map(|&o| if o { '1' } else { '0' })
                .collect();
            *path_counts.entry(key).or_insert(0) += 1;
        }
        remaining -= batch;
        batch_index += 1;
    }

    let all_true = "1".repeat(seq.len());
    let hits = path_counts.get(&all_true).copied().unwrap_or(0);
    let empirical = hits as f64 / n as f64;
    let std_error = (empirical * (1.0 - empirical) / n as f64).sqrt();

    Ok(SampleReport {
        n_samples: n,
        path_counts,
        exact,
        empirical,
        std_error,
    })
}
