//! Ehrhart quasipolynomial of t -> |L ∩ [-t, t]^2| for the lattice 2Z x Z,
//! and a skewed lattice with period 20.

use latdensity::lattice::{coefficient_bound_check, count_points, ehrhart_interpolate, h_vector, Sublattice};
use latdensity::IntMatrix;

fn show(rows: &[[i64; 2]]) -> latdensity::Result<()> {
    let a = IntMatrix::from_rows(rows)?;
    let lattice = Sublattice::from_generators(&a);
    let q = ehrhart_interpolate(&lattice)?;
    println!(
        "A = {a}: index {}, period {}",
        lattice.det().expect("full rank"),
        q.period()
    );
    if q.period() <= 4 {
        println!("{q}");
    }
    println!("  leading coefficient {}", q.leading_coefficient());
    let h = h_vector(&q, q.period())?;
    println!(
        "  h-vector nonnegative: {}, residue sum {}",
        h.all_nonnegative(),
        h.residue_sum(0)
    );
    println!("  coefficient bound holds: {}", coefficient_bound_check(&q));
    for t in [5u64, 17, 100] {
        println!(
            "  L({t}) = {} (direct count {})",
            q.evaluate(t),
            count_points(&lattice, t)
        );
    }
    Ok(())
}

fn main() -> latdensity::Result<()> {
    show(&[[2, 0], [0, 1]])?;
    show(&[[2, -2], [5, 5]])?;
    Ok(())
}
