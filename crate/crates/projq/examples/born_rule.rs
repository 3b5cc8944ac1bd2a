//! Born probabilities of single events: `P_ψ(E) = ‖Eψ‖²`, and the same
//! value recovered as a sum over any orthonormal basis of the event range.
//!
//! Run with: `cargo run --example born_rule`

use projq::events::{basis_vector, Event, StatePoint};
use projq::linalg::{inner, random_unitary, C64, CVector, DEFAULT_TOL};
use projq::prob::born;
use projq::random;

fn main() {
    // A qubit prepared along e1 and the balanced superposition |+⟩.
    let psi = StatePoint::new(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let plus = StatePoint::new(
        &CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        DEFAULT_TOL,
    )
    .unwrap();

    let up = Event::ray(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let down = Event::ray(&basis_vector(2, 1), DEFAULT_TOL).unwrap();

    println!("P_e1(|e1><e1|)   = {:.6}", born(&psi, &up).unwrap());
    println!("P_e1(|e2><e2|)   = {:.6}", born(&psi, &down).unwrap());
    println!("P_+(|e1><e1|)    = {:.6}", born(&plus, &up).unwrap());
    println!("P_e1(0)          = {:.6}", born(&psi, &Event::zero(2)).unwrap());
    println!("P_e1(I)          = {:.6}", born(&psi, &Event::identity(2)).unwrap());

    // The basis-sum form: P_ψ(E) = Σ_j |<α_j, ψ>|² for any orthonormal
    // basis {α_j} of Ran E. Rotating the basis changes the terms but not
    // the sum.
    let d = 5;
    let state = random::random_state(d, 7);
    let event = random::random_event(d, 3, 11);
    let direct = born(&state, &event).unwrap();
    println!("\nrandom rank-3 event in dimension {d}:");
    println!("  ||E psi||^2                  = {direct:.12}");
    for seed in 0..3u64 {
        let rotation = random_unitary(3, seed);
        let basis = event.range().basis() * rotation;
        let sum: f64 = basis
            .column_iter()
            .map(|a| {
                inner(&a.into_owned(), state.representative())
                    .unwrap()
                    .norm_sqr()
            })
            .sum();
        println!("  basis sum (rotation {seed})      = {sum:.12}");
    }
}
