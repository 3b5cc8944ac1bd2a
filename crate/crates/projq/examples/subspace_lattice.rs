//! The orthocomplemented lattice of subspaces: join, meet, complement,
//! projective dimensions (a ray is 0-dimensional, the empty subspace is
//! -1-dimensional), De Morgan, and the dimension formula.
//!
//! Run with: `cargo run --example subspace_lattice`

use projq::events::{basis_vector, Subspace};
use projq::linalg::{C64, CVector, DEFAULT_TOL};
use projq::random;

fn main() {
    // Projective dimension bookkeeping: Hilbert dimension minus one.
    let zero = Subspace::zero(3);
    let ray = Subspace::from_vectors(3, &[basis_vector(3, 0)], DEFAULT_TOL).unwrap();
    let full = Subspace::full(3);
    println!("projective dimensions in C^3:");
    println!("  empty subspace: {}", zero.projective_dim());
    println!("  a ray:          {}", ray.projective_dim());
    println!("  all of C^3:     {}", full.projective_dim());

    // Meet of skew rays is empty; join of the axes is everything.
    let e1 = Subspace::from_vectors(2, &[basis_vector(2, 0)], DEFAULT_TOL).unwrap();
    let e2 = Subspace::from_vectors(2, &[basis_vector(2, 1)], DEFAULT_TOL).unwrap();
    let diag = Subspace::from_vectors(
        2,
        &[CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)])],
        DEFAULT_TOL,
    )
    .unwrap();
    println!("\nin C^2:");
    println!(
        "  meet(e1, diagonal) is zero: {}",
        e1.meet(&diag, DEFAULT_TOL).unwrap().is_zero()
    );
    println!(
        "  join(e1, e2) is full:       {}",
        e1.join(&e2, DEFAULT_TOL)
            .unwrap()
            .approx_eq(&Subspace::full(2), 1e-12)
    );

    // Lattice laws on random pairs.
    println!("\nrandom subspace pairs at d = 6:");
    for seed in 0..4u64 {
        let a = random::random_subspace(6, 2 + (seed % 3) as usize, 10 + seed);
        let b = random::random_subspace(6, 1 + (seed % 4) as usize, 40 + seed);
        let join = a.join(&b, DEFAULT_TOL).unwrap();
        let meet = a.meet(&b, DEFAULT_TOL).unwrap();

        let de_morgan = join
            .ortho()
            .approx_eq(&a.ortho().meet(&b.ortho(), DEFAULT_TOL).unwrap(), 1e-9);
        let double_complement = a.ortho().ortho().approx_eq(&a, 1e-9);
        println!(
            "  dim a = {}, dim b = {}: dim join = {}, dim meet = {} | De Morgan: {de_morgan}, ortho^2 = id: {double_complement}",
            a.projective_dim(),
            b.projective_dim(),
            join.projective_dim(),
            meet.projective_dim(),
        );
        assert_eq!(
            join.projective_dim() + meet.projective_dim(),
            a.projective_dim() + b.projective_dim()
        );
    }
    println!("  dimension formula dim(join) + dim(meet) = dim(a) + dim(b) held throughout");
}
