//! Exact density of solvable equations a1 x1 + a2 x2 = b against zeta(3)/zeta(2).

use latdensity::closed_forms::equation_sat_density;
use latdensity::density::{BallSpec, DensitySeries, EnumOptions, TargetSet};

fn main() -> latdensity::Result<()> {
    let target = equation_sat_density(1, 2)?.value.expect("k > 1");
    let spec = BallSpec::new(1, 2, 1, 0)?;
    let series = DensitySeries::exact(spec, TargetSet::SatZ, &[10, 20, 40, 80, 160], &EnumOptions::default())?;
    println!("limit: {target}");
    for p in &series.points {
        println!(
            "r = {:>3}: rho = {:.6}  (diff {:+.6})",
            p.r,
            p.ratio_f64(),
            p.ratio_f64() - target.mid()
        );
    }
    Ok(())
}
