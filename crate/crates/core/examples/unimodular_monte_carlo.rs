//! Seeded Monte Carlo estimate of the density of unimodular 2 x 3 matrices.

use latdensity::closed_forms::unimodular_density;
use latdensity::density::{mc_density, BallSpec, TargetSet};

fn main() -> latdensity::Result<()> {
    let spec = BallSpec::new(1, 3, 2, 1_000_000)?;
    let target = unimodular_density(2, 3)?.value.expect("n <= k");
    for seed in 0..3 {
        let p = mc_density(&spec, TargetSet::Unimodular, 200_000, seed)?;
        let ci = p.ci.expect("sampled");
        println!(
            "seed {seed}: {:.5} in [{:.5}, {:.5}], contains 1/(zeta(2) zeta(3)) = {:.5}: {}",
            p.ratio_f64(),
            ci.low,
            ci.high,
            target.mid(),
            ci.contains(target.mid())
        );
    }
    Ok(())
}
