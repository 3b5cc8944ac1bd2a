//! Conditional probability and the collapse rule: the ratio definition
//! `P_ψ(E₂|E₁) = P_ψ(E₁,E₂)/P_ψ(E₁)` agrees with collapsing the state and
//! applying Born's rule, and per-step conditionals chain back to the
//! consecutive probability.
//!
//! Run with: `cargo run --example conditional_collapse`

use projq::events::{basis_vector, Event, StatePoint};
use projq::linalg::{C64, CVector, DEFAULT_TOL};
use projq::prob::{born, collapse, conditional, consecutive, EventSequence};
use projq::random;

fn main() {
    let psi = StatePoint::new(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let plus = Event::ray(
        &CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        DEFAULT_TOL,
    )
    .unwrap();
    let down = Event::ray(&basis_vector(2, 1), DEFAULT_TOL).unwrap();

    // Ratio route.
    let ratio = conditional(&psi, &plus, &down, DEFAULT_TOL).unwrap();
    println!("P(down | plus) via ratio    = {ratio:.6}");

    // Collapse route: psi-tilde = E1 psi / ||E1 psi||, then Born.
    let collapsed = collapse(&psi, &plus, DEFAULT_TOL).unwrap();
    let via_collapse = born(&collapsed, &down).unwrap();
    println!("P(down | plus) via collapse = {via_collapse:.6}");
    println!(
        "collapsed representative    = [{:.4}, {:.4}]",
        collapsed.representative()[0].re,
        collapsed.representative()[1].re
    );

    // Conditioning on an event the state cannot pass gives exactly zero.
    let impossible = conditional(&psi, &down, &plus, DEFAULT_TOL).unwrap();
    println!("P(plus | down) from e1      = {impossible:.6} (zero branch)");

    // Chain rule on a random instance: the product of stepwise
    // conditionals along the all-occurred path is Wigner's rule.
    println!("\nchain rule at d = 5:");
    let state = random::random_state(5, 41);
    let events: Vec<Event> = (0..3)
        .map(|k| random::random_event(5, k + 1, 50 + k as u64))
        .collect();
    let seq = EventSequence::new(events.clone()).unwrap();

    let mut product = 1.0;
    let mut current = state.clone();
    for (i, event) in events.iter().enumerate() {
        let p = born(&current, event).unwrap();
        println!("  step {i}: P = {p:.9}");
        product *= p;
        current = collapse(&current, event, DEFAULT_TOL).unwrap();
    }
    println!("  product of steps   = {product:.12}");
    println!(
        "  consecutive (direct) = {:.12}",
        consecutive(&state, &seq).unwrap()
    );
}
