//! Solve A X = B over Z and over Q, with a witness or a dual certificate.

use latdensity::solve::{solvable_over_q, solvable_over_z, solvable_over_z_smith, LinearSystem};
use latdensity::IntMatrix;

fn report(a: &[[i64; 2]], b: &[[i64; 1]]) -> latdensity::Result<()> {
    let sys = LinearSystem::new(IntMatrix::from_rows(a)?, IntMatrix::from_rows(b)?)?;
    let z = solvable_over_z(&sys);
    let q = solvable_over_q(&sys);
    println!("A = {}, B = {}", sys.coefficients(), sys.rhs());
    match (&z.witness, &z.certificate) {
        (Some(x), _) => println!("  over Z: solvable, X = {x}"),
        (None, Some(v)) => {
            let v: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            println!("  over Z: unsolvable, certificate v = ({})", v.join(", "));
        }
        (None, None) => println!("  over Z: unsolvable"),
    }
    if let Ok(smith) = solvable_over_z_smith(&sys) {
        println!("  greatest-divisor criterion agrees: {}", smith == z.solvable);
    }
    match &q.witness {
        Some(x) => println!("  over Q: solvable, X = {x}"),
        None => println!("  over Q: unsolvable"),
    }
    Ok(())
}

fn main() -> latdensity::Result<()> {
    report(&[[2, 0], [0, 3]], &[[4], [9]])?;
    report(&[[2, 4], [1, 3]], &[[3], [1]])?;
    report(&[[1, 2], [2, 4]], &[[1], [3]])?;
    Ok(())
}
