//! Monte Carlo validation of Wigner's rule: simulate sequential binary
//! measurements with the collapse rule and compare the all-occurred path
//! frequency against the closed form, with binomial error bars.
//!
//! Run with: `cargo run --release --example monte_carlo`

use projq::events::{basis_vector, Event, StatePoint};
use projq::linalg::{C64, CVector, DEFAULT_TOL};
use projq::prob::EventSequence;
use projq::random;
use projq::sampler::estimate;

fn main() {
    // ψ = e1 through |+><+| then |e2><e2|: exact probability 1/4.
    let psi = StatePoint::new(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let plus = Event::ray(
        &CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        DEFAULT_TOL,
    )
    .unwrap();
    let down = Event::ray(&basis_vector(2, 1), DEFAULT_TOL).unwrap();
    let seq = EventSequence::new(vec![plus, down]).unwrap();

    let n = 100_000;
    let report = estimate(&psi, &seq, n, 42, DEFAULT_TOL).unwrap();
    println!("two-event qubit instance, n = {n}:");
    println!("  exact     = {:.6}", report.exact);
    println!("  empirical = {:.6} ± {:.6}", report.empirical, report.std_error);
    println!("  paths:");
    for (path, count) in &report.path_counts {
        println!("    {path} -> {count}");
    }

    // Random instances across dimensions: the estimate lands within a few
    // standard errors of the closed form.
    println!("\nrandom instances (n = {n} each):");
    println!("{:>4} {:>7} {:>12} {:>12} {:>10}", "d", "events", "exact", "empirical", "sigmas");
    for i in 0..8u64 {
        let d = 2 + (i % 7) as usize;
        let len = 1 + (i % 4) as usize;
        let state = random::random_state(d, 900 + i);
        let events: Vec<Event> = (0..len)
            .map(|k| random::random_event(d, (k % d) + 1, 950 + i * 8 + k as u64))
            .collect();
        let seq = EventSequence::new(events).unwrap();
        let report = estimate(&state, &seq, n, 1000 + i, DEFAULT_TOL).unwrap();
        let se = (report.exact * (1.0 - report.exact) / n as f64).sqrt();
        let sigmas = if se > 0.0 {
            (report.empirical - report.exact).abs() / se
        } else {
            0.0
        };
        println!(
            "{d:>4} {len:>7} {:>12.6} {:>12.6} {sigmas:>10.2}",
            report.exact, report.empirical
        );
    }
}
