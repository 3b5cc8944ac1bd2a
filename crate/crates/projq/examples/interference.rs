//! Quantum σ-additivity: the probability through a join of orthogonal
//! events splits into diagonal probabilities plus interference cross
//! terms, and the cross terms are generally nonzero — that failure of
//! classical additivity is the interference.
//!
//! Run with: `cargo run --example interference`

use projq::events::{basis_vector, Event, StatePoint};
use projq::linalg::{random_unitary, C64, CVector, DEFAULT_TOL};
use projq::prob::interference;
use projq::random;

fn main() {
    // The two-slit toy instance: ψ = |+⟩, slits |e1><e1| and |e2><e2|,
    // screen event |+><+|.
    let plus_vec = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
    let psi = StatePoint::new(&plus_vec, DEFAULT_TOL).unwrap();
    let slits = [
        Event::ray(&basis_vector(2, 0), DEFAULT_TOL).unwrap(),
        Event::ray(&basis_vector(2, 1), DEFAULT_TOL).unwrap(),
    ];
    let screen = Event::ray(&plus_vec, DEFAULT_TOL).unwrap();

    let report = interference(&psi, &slits, &screen, DEFAULT_TOL).unwrap();
    println!("two-slit instance:");
    println!("  total              = {:.6}", report.total);
    println!("  diagonal           = {:?}", report.diagonal);
    for &(j, k, z) in &report.cross_terms {
        println!("  cross ({j},{k})        = {:.6} {:+.6}i", z.re, z.im);
    }
    let cross = report.cross_sum();
    println!("  sum of cross terms = {:.6} {:+.6}i", cross.re, cross.im);
    println!(
        "  diagonal alone     = {:.6}  (classical additivity misses {:.6})",
        report.diagonal.iter().sum::<f64>(),
        cross.re
    );

    // A richer random instance: five orthogonal rank-1 parts in d = 8.
    println!("\nrandom instance, five parts at d = 8:");
    let d = 8;
    let frame = random_unitary(d, 9);
    let parts: Vec<Event> = (0..5)
        .map(|k| Event::ray(&frame.column(k).into_owned(), DEFAULT_TOL).unwrap())
        .collect();
    let state = random::random_state(d, 2);
    let event = random::random_event(d, 3, 5);
    let report = interference(&state, &parts, &event, DEFAULT_TOL).unwrap();
    println!("  total              = {:.9}", report.total);
    println!(
        "  Σ diagonal         = {:.9}",
        report.diagonal.iter().sum::<f64>()
    );
    let cross = report.cross_sum();
    println!("  Σ cross            = {:.9} {:+.9}i", cross.re, cross.im);
    println!(
        "  identity residual  = {:.3e}",
        (report.total - report.reconstructed_total()).abs()
    );
}
