//! F_{1,2,1}(r) / (2r)^2 against the exact density of solvable equations.

use latdensity::density::{gcd_sum_vs_density_report, to_f64, EnumOptions};

fn main() -> latdensity::Result<()> {
    let rows = gcd_sum_vs_density_report(1, 2, 1, &[10, 20, 50, 100], &EnumOptions::default())?;
    println!("{:>4} {:>10} {:>10} {:>10}", "r", "rho", "F/(2r)^2", "gap");
    for row in rows {
        println!(
            "{:>4} {:>10.6} {:>10.6} {:>10.6}",
            row.r,
            to_f64(&row.density_full_rank),
            to_f64(&row.normalized_f),
            to_f64(&row.gap)
        );
    }
    Ok(())
}
