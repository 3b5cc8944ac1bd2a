//! Quantum independence is a property of the *ordered* pair: the same two
//! events can be independent one way round and entangled the other.
//!
//! Run with: `cargo run --example entanglement_order`

use projq::events::{basis_vector, Event, StatePoint};
use projq::linalg::{C64, CVector, DEFAULT_TOL};
use projq::prob::independence;

fn main() {
    let psi = StatePoint::new(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let plus = Event::ray(
        &CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        DEFAULT_TOL,
    )
    .unwrap();
    let up = Event::ray(&basis_vector(2, 0), DEFAULT_TOL).unwrap();

    let fwd = independence(&psi, &plus, &up, DEFAULT_TOL).unwrap();
    println!("order (plus, up):");
    println!("  P(plus, up)        = {:.6}", fwd.lhs);
    println!("  P(plus) * P(up)    = {:.6}", fwd.rhs);
    println!(
        "  -> {}",
        if fwd.independent { "independent" } else { "entangled" }
    );

    let rev = independence(&psi, &up, &plus, DEFAULT_TOL).unwrap();
    println!("order (up, plus):");
    println!("  P(up, plus)        = {:.6}", rev.lhs);
    println!("  P(up) * P(plus)    = {:.6}", rev.rhs);
    println!(
        "  -> {}",
        if rev.independent { "independent" } else { "entangled" }
    );

    // The product side is symmetric, the sequential side is not: that
    // asymmetry is exactly what makes the notion order-dependent.
    println!(
        "\nsequential values differ across orders by {:.6}",
        (fwd.lhs - rev.lhs).abs()
    );
}
