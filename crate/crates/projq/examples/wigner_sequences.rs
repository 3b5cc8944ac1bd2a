//! Consecutive probabilities of ordered event sequences, three ways:
//! the matrix-vector path `‖E_n⋯E₁ψ‖²`, the literal basis expansion, and
//! the state-free operator norm `‖E_n⋯E₁E₀‖²_op` with a rank-1 initial
//! event.
//!
//! Run with: `cargo run --example wigner_sequences`

use projq::events::{basis_vector, Event, StatePoint};
use projq::linalg::{C64, CVector, DEFAULT_TOL};
use projq::prob::{consecutive, consecutive_events, consecutive_via_bases, EventSequence};
use projq::random;

fn main() {
    // ψ = e1 through |+><+| then |e2><e2|: each projection halves the
    // surviving norm, so the probability is 1/4.
    let psi = StatePoint::new(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    let plus = Event::ray(
        &CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        DEFAULT_TOL,
    )
    .unwrap();
    let down = Event::ray(&basis_vector(2, 1), DEFAULT_TOL).unwrap();

    let seq = EventSequence::new(vec![plus.clone(), down.clone()]).unwrap();
    println!("P_e1(plus, down) = {:.6}", consecutive(&psi, &seq).unwrap());

    let expansion = consecutive_via_bases(
        &psi,
        &plus,
        &down,
        plus.range().basis(),
        down.range().basis(),
        DEFAULT_TOL,
    )
    .unwrap();
    println!("basis expansion  = {expansion:.6}");

    let with_preparation =
        EventSequence::new(vec![psi.ray_event(), plus.clone(), down.clone()]).unwrap();
    println!(
        "operator norm    = {:.6}",
        consecutive_events(&with_preparation).unwrap()
    );

    // Appending events never raises the probability.
    println!("\nmonotonicity under longer sequences (random instance, d = 4):");
    let state = random::random_state(4, 3);
    let mut events = Vec::new();
    for step in 0..4u64 {
        events.push(random::random_event(4, (step % 3) as usize + 1, 20 + step));
        let p = consecutive(&state, &EventSequence::new(events.clone()).unwrap()).unwrap();
        println!("  after {} events: {p:.9}", events.len());
    }

    // The three routes stay in lockstep on random instances.
    println!("\nthree-way agreement on random instances:");
    for seed in 0..4u64 {
        let d = 3 + (seed % 3) as usize;
        let state = random::random_state(d, 100 + seed);
        let e1 = random::random_event(d, 2, 200 + seed);
        let e2 = random::random_event(d, d - 1, 300 + seed);

        let a = consecutive(
            &state,
            &EventSequence::new(vec![e1.clone(), e2.clone()]).unwrap(),
        )
        .unwrap();
        let b = consecutive_via_bases(
            &state,
            &e1,
            &e2,
            e1.range().basis(),
            e2.range().basis(),
            DEFAULT_TOL,
        )
        .unwrap();
        let c = consecutive_events(
            &EventSequence::new(vec![state.ray_event(), e1, e2]).unwrap(),
        )
        .unwrap();
        println!("  d={d}: vector {a:.12}  expansion {b:.12}  norm {c:.12}");
    }
}
