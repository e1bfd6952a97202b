//! Closed-form limits and bounds next to an exact finite-radius density.

use latdensity::closed_forms::{qm_density_law, system_density_bounds, zeta};
use latdensity::density::{exact_density, BallSpec, EnumOptions, TargetSet};

fn main() -> latdensity::Result<()> {
    for s in [2, 3, 4] {
        let z = zeta(s, 1e-12)?;
        println!("zeta({s}) = {:.12} ± {:.1e}", z.value, z.error_bound);
    }
    let bounds = system_density_bounds(1, 3, 2)?;
    let (lo, hi) = (bounds.lower.expect("k > n"), bounds.upper.expect("k >= n"));
    println!("m=1, k=3, n=2: density of solvable systems between {lo} and {hi}");
    println!("over Q: {}", qm_density_law(1, 3, 2)?.value.expect("exact"));

    let spec = BallSpec::new(1, 3, 2, 6)?;
    let p = exact_density(&spec, TargetSet::SatZ, &EnumOptions::default())?;
    println!("exact rho_6 = {} = {:.6}", p.ratio(), p.ratio_f64());
    Ok(())
}
