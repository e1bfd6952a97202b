//! Growth of F_{1,2,2}(r) = sum of 1/|det A| over nonsingular 2 x 2 matrices,
//! normalized by r^2 ln r.

use latdensity::density::{conjecture_probe, EnumOptions};

fn main() -> latdensity::Result<()> {
    let radii: Vec<u64> = (5..=40).step_by(5).collect();
    let report = conjecture_probe(2, &radii, &EnumOptions::default())?;
    for row in &report.rows {
        println!("r = {:>2}: ratio {:.4}", row.r, row.ratio.unwrap_or(f64::NAN));
    }
    println!("min {:?}, max {:?}", report.min_ratio, report.max_ratio);
    Ok(())
}
