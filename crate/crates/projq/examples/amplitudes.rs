//! The invariant amplitude of an ordered point sequence: the cyclic
//! product of consecutive overlaps. It is phase- and unitary-invariant,
//! cyclic, conjugates under order reversal, and is *not* symmetric under
//! general permutations — order carries information.
//!
//! Run with: `cargo run --example amplitudes`

use projq::amplitude::{amplitude, amplitude_via_symbol, PointSequence};
use projq::events::{basis_vector, StatePoint};
use projq::linalg::{C64, CVector, DEFAULT_TOL};
use projq::random;

fn main() {
    // The worked three-point instance: ψ₁ = e1, ψ₃ = (i·e1 + e2)/√2,
    // ψ₂ their normalized midpoint. Its amplitude is 0.5 - i/(4√2).
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi1 = basis_vector(2, 0);
    let psi3 = CVector::from_vec(vec![C64::new(0.0, s), C64::new(s, 0.0)]);
    let sum = &psi1 + &psi3;
    let psi2 = &sum / C64::new(sum.norm(), 0.0);

    let p1 = StatePoint::new(&psi1, DEFAULT_TOL).unwrap();
    let p2 = StatePoint::new(&psi2, DEFAULT_TOL).unwrap();
    let p3 = StatePoint::new(&psi3, DEFAULT_TOL).unwrap();

    let triple = PointSequence::new(vec![p1.clone(), p2.clone(), p3.clone()]).unwrap();
    let a = amplitude(&triple).value();
    println!("A3(p1, p2, p3) = {:.6} {:+.6}i", a.re, a.im);

    let swapped = PointSequence::new(vec![p1.clone(), p3.clone(), p2.clone()]).unwrap();
    let b = amplitude(&swapped).value();
    println!("A3(p1, p3, p2) = {:.6} {:+.6}i  (conjugate: order matters)", b.re, b.im);

    // Single points and pairs: A1 = 1, A2 = the overlap.
    let single = PointSequence::new(vec![p1.clone()]).unwrap();
    println!("\nA1(p1)         = {:.6}", amplitude(&single).value().re);
    let pair = PointSequence::new(vec![p1.clone(), p3.clone()]).unwrap();
    println!("A2(p1, p3)     = {:.6}", amplitude(&pair).value().re);

    // Cyclic rotations leave the amplitude alone; reversal conjugates it.
    println!("\ninvariances on a random 4-point sequence (d = 3):");
    let points: Vec<StatePoint> = (0..4).map(|k| random::random_state(3, 60 + k)).collect();
    let seq = PointSequence::new(points).unwrap();
    let reference = amplitude(&seq).value();
    println!("  A4             = {:.9} {:+.9}i", reference.re, reference.im);
    for k in 1..4 {
        let rotated = amplitude(&seq.rotated(k)).value();
        println!(
            "  rotated by {k}   = {:.9} {:+.9}i",
            rotated.re, rotated.im
        );
    }
    let reversed = amplitude(&seq.reversed()).value();
    println!("  reversed       = {:.9} {:+.9}i", reversed.re, reversed.im);

    // A palindrome collapses to a product of overlaps: real, in [0, 1].
    let half: Vec<StatePoint> = (0..3).map(|k| random::random_state(3, 80 + k)).collect();
    let mut palindrome = half.clone();
    palindrome.extend(half[..2].iter().rev().cloned());
    let pal = amplitude(&PointSequence::new(palindrome).unwrap()).value();
    println!("\npalindrome     = {:.9} {:+.9}i", pal.re, pal.im);

    // The same value through the lower symbol of the projector product.
    let via = amplitude_via_symbol(&triple).unwrap().value();
    println!(
        "\nA3 via symbol  = {:.6} {:+.6}i (matches the direct product)",
        via.re, via.im
    );
}
