//! State-free probabilities with time evolution: the operator-norm form
//! `‖E_n U_{n,n-1} ⋯ E₁ U_{1,0} E₀‖²_op` with contraction propagators.
//! Unitaries outside the event chain are absorbed (a Markov-type
//! property); only the evolution between events matters.
//!
//! Run with: `cargo run --example timed_evolution`

use projq::events::{basis_vector, Event};
use projq::linalg::{random_unitary, C64, CMatrix, DEFAULT_TOL};
use projq::prob::{timed_consecutive, TimedSequence};
use projq::random;

fn main() {
    // A rotation carrying e1 to e2 realigns two orthogonal detectors.
    let up = Event::ray(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let down = Event::ray(&basis_vector(2, 1), DEFAULT_TOL).unwrap();
    let mut rotation = CMatrix::zeros(2, 2);
    rotation[(1, 0)] = C64::new(1.0, 0.0);
    rotation[(0, 1)] = C64::new(-1.0, 0.0);

    let still = TimedSequence::new(
        up.clone(),
        vec![(CMatrix::identity(2, 2), down.clone())],
    )
    .unwrap();
    let rotated = TimedSequence::new(up.clone(), vec![(rotation, down.clone())]).unwrap();
    println!("P(up, down) with no evolution   = {:.6}", timed_consecutive(&still));
    println!("P(up, down) after the rotation  = {:.6}", timed_consecutive(&rotated));

    // Outward unitaries are absorbed: prior evolution before E0 and
    // later evolution after En change nothing.
    let d = 4;
    let e0 = random::random_event(d, 1, 1);
    let e1 = random::random_event(d, 2, 2);
    let u = random::random_contraction(d, 3);
    let before = random_unitary(d, 4);
    let after = random_unitary(d, 5);

    let base = TimedSequence::new(e0.clone(), vec![(u.clone(), e1.clone())]).unwrap();
    let with_before = TimedSequence::new(
        Event::identity(d),
        vec![(before, e0.clone()), (u.clone(), e1.clone())],
    )
    .unwrap();
    let with_after = TimedSequence::new(
        e0.clone(),
        vec![(u.clone(), e1.clone()), (after, Event::identity(d))],
    )
    .unwrap();
    println!("\nrandom instance at d = {d}:");
    println!("  base                        = {:.12}", timed_consecutive(&base));
    println!("  unitary before E0 absorbed  = {:.12}", timed_consecutive(&with_before));
    println!("  unitary after  En absorbed  = {:.12}", timed_consecutive(&with_after));

    // A different propagator *between* the events does matter.
    let other = random_unitary(d, 6);
    let altered = TimedSequence::new(e0, vec![(other, e1)]).unwrap();
    println!("  altered between-events U    = {:.12}", timed_consecutive(&altered));

    // Propagators must be contractions; an expanding map is rejected.
    let expanding = CMatrix::identity(2, 2) * C64::new(1.5, 0.0);
    match TimedSequence::new(up, vec![(expanding, down)]) {
        Err(err) => println!("\nexpanding propagator rejected: {err}"),
        Ok(_) => unreachable!(),
    }
}
