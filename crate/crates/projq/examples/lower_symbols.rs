//! Expected values and lower symbols: `σ(T)(p) = ⟨ψ, Tψ⟩` bounds the
//! operator norm from below, and, by polarization, knowing the symbol is
//! knowing the operator — demonstrated by reconstructing matrices from
//! their quadratic form alone.
//!
//! Run with: `cargo run --example lower_symbols`

use projq::amplitude::{
    expected_value, lower_symbol_sup, lower_symbol_sup_exact, reconstruct_from_quadratic_form,
};
use projq::events::StatePoint;
use projq::linalg::{inner, operator_norm, C64, CMatrix, CVector, DEFAULT_TOL};
use projq::random;

fn main() {
    // Expected values in the balanced state.
    let plus = StatePoint::new(
        &CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
        DEFAULT_TOL,
    )
    .unwrap();
    let sigma_z = CMatrix::from_diagonal(&CVector::from_vec(vec![
        C64::new(1.0, 0.0),
        C64::new(-1.0, 0.0),
    ]));
    let ez = expected_value(&plus, &sigma_z).unwrap();
    println!("E_+(sigma_z) = {:.6} {:+.6}i", ez.re, ez.im);

    // The sampled sup of |σ(T)| creeps up to ‖T‖ but never crosses it.
    let t = random::random_hermitian(4, 3);
    let norm = operator_norm(&t);
    println!("\nrandom Hermitian at d = 4: operator norm = {norm:.9}");
    for &count in &[10usize, 100, 1000] {
        let samples: Vec<StatePoint> =
            (0..count as u64).map(|k| random::random_state(4, 500 + k)).collect();
        let sup = lower_symbol_sup(&t, &samples).unwrap();
        println!("  sup over {count:>4} sampled states = {sup:.9}");
    }
    println!(
        "  exact sup (spectral radius)   = {:.9}",
        lower_symbol_sup_exact(&t).unwrap()
    );

    // Polarization: rebuild operators, including non-Hermitian ones, from
    // v ↦ <v, Tv> evaluated as a black box.
    println!("\nreconstruction from the quadratic form:");
    for seed in 0..3u64 {
        let t = random::random_operator(6, 700 + seed);
        let rebuilt = reconstruct_from_quadratic_form(|v| inner(v, &(&t * v)).unwrap(), 6);
        println!(
            "  random operator {seed}: error = {:.3e}",
            operator_norm(&(rebuilt - &t))
        );
    }

    let shift = {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        m
    };
    let rebuilt = reconstruct_from_quadratic_form(|v| inner(v, &(&shift * v)).unwrap(), 2);
    println!(
        "  non-Hermitian |e1><e2|: error = {:.3e}",
        operator_norm(&(rebuilt - &shift))
    );
}
