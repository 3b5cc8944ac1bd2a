//! Geometric observables (projective-subspace-valued measures) and
//! geometric density matrices: spectral atoms, Borel queries, supports,
//! the trace identity `Σ (1 + dim S_k)·a_k = 1`, and `P_ρ(E) = Tr(Eρ)`.
//!
//! Run with: `cargo run --example observables_density`

use projq::events::{basis_vector, Event, Subspace};
use projq::linalg::{operator_norm, C64, CMatrix, CVector, DEFAULT_TOL};
use projq::observable::{
    density_to_operator, observable_from_hermitian, operator_to_density, prob_density,
    BorelQuery, DensityAtom, GeometricDensityMatrix, EIGENVALUE_MERGE_TOL,
};
use projq::prob::born;
use projq::random;

fn main() {
    // The observable of |+><+|: eigenvalue 0 on the antidiagonal ray,
    // eigenvalue 1 on the diagonal ray.
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = CVector::from_vec(vec![C64::new(s, 0.0), C64::new(s, 0.0)]);
    let projector = &plus * plus.adjoint();
    let obs = observable_from_hermitian(&projector).unwrap();
    println!("observable of |+><+|:");
    for atom in obs.atoms() {
        println!(
            "  value {:+.3} on a subspace of projective dimension {}",
            atom.value,
            atom.subspace.projective_dim()
        );
    }
    println!("  support = {:?}", obs.support());

    // Borel queries: intervals and points pick out atom subspaces.
    let window = obs
        .evaluate(&BorelQuery::closed(0.5, 2.0).unwrap(), DEFAULT_TOL)
        .unwrap();
    println!(
        "  E([0.5, 2]) has projective dimension {}",
        window.projective_dim()
    );
    let everything = obs.evaluate(&BorelQuery::all(), DEFAULT_TOL).unwrap();
    println!(
        "  E(R) is the full space: {}",
        everything.approx_eq(&Subspace::full(2), 1e-12)
    );
    let nothing = obs.evaluate(&BorelQuery::empty(), DEFAULT_TOL).unwrap();
    println!("  E(empty set) is zero: {}", nothing.is_zero());

    // The maximally mixed state as a geometric density matrix: one atom
    // (1/2, C^2), trace condition (1 + 1) * 1/2 = 1.
    let mixed = GeometricDensityMatrix::new(
        2,
        vec![DensityAtom {
            weight: 0.5,
            subspace: Subspace::full(2),
        }],
        DEFAULT_TOL,
    )
    .unwrap();
    let up = Event::ray(&basis_vector(2, 0), DEFAULT_TOL).unwrap();
    println!("\nmaximally mixed qubit:");
    println!("  P_rho(up) = {:.6}", prob_density(&mixed, &up).unwrap());
    println!(
        "  operator form is I/2: {}",
        operator_norm(
            &(density_to_operator(&mixed).matrix() - CMatrix::identity(2, 2) * C64::new(0.5, 0.0))
        ) < 1e-12
    );

    // A pure geometric density reproduces Born's rule.
    let psi = random::random_state(3, 4);
    let pure = GeometricDensityMatrix::new(
        3,
        vec![DensityAtom {
            weight: 1.0,
            subspace: psi.ray_event().range().clone(),
        }],
        DEFAULT_TOL,
    )
    .unwrap();
    let event = random::random_event(3, 2, 8);
    println!("\npure-state check (random instance):");
    println!("  Tr(E rho) = {:.9}", prob_density(&pure, &event).unwrap());
    println!("  ||E psi||^2 = {:.9}", born(&psi, &event).unwrap());

    // Round-trip a random density operator through its atoms.
    let op = random::random_density(5, 17);
    let rho = operator_to_density(&op, EIGENVALUE_MERGE_TOL).unwrap();
    println!("\nrandom density at d = 5, atoms (a_k, 1 + dim S_k):");
    let mut trace = 0.0;
    for atom in rho.atoms() {
        let mult = 1 + atom.subspace.projective_dim();
        trace += atom.weight * mult as f64;
        println!("  ({:.6}, {})", atom.weight, mult);
    }
    println!("  trace identity sum = {trace:.12}");
    let back = density_to_operator(&rho);
    println!(
        "  round-trip error   = {:.3e}",
        operator_norm(&(back.matrix() - op.matrix()))
    );
}
