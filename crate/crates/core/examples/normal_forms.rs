//! Hermite and Smith normal forms of a small integer matrix.

use latdensity::linalg::{hermite_normal_form, maximal_minor_gcd, smith_normal_form};
use latdensity::IntMatrix;

fn main() -> latdensity::Result<()> {
    let a = IntMatrix::from_rows(&[[4, 6, 2], [2, 8, 10]])?;
    let hf = hermite_normal_form(&a);
    println!("A = {a}");
    println!(
        "HNF basis H = {}  (rank {}, pivots in rows {:?})",
        hf.basis, hf.rank, hf.pivot_rows
    );
    println!("column transform U = {}", hf.transform);

    let snf = smith_normal_form(&a);
    let diag: Vec<String> = snf.diag.iter().map(|d| d.to_string()).collect();
    println!("invariant factors: {}", diag.join(", "));
    println!("gcd of maximal minors: {}", maximal_minor_gcd(&a)?);
    Ok(())
}
