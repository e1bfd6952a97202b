//! Exact integer linear algebra: rank, determinant, Hermite and Smith
//! normal forms, greatest divisors and saturation.
//!
//! All public entry points take [`IntMatrix`] (arbitrary precision). They
//! first try an `i128` instantiation of the same generic routine and fall
//! back to `BigInt` when that reports overflow, so results are always exact.

pub mod bareiss;
pub mod hermite;
pub mod matrix;
pub mod scalar;
pub mod smith;

use num_bigint::BigInt;

pub use hermite::{hermite_normal_form, is_reduced, saturation, HermiteForm};
pub use matrix::{is_unimodular, IntMatrix, Matrix};
pub use scalar::Scalar;
pub use smith::{maximal_minor_gcd, smith_normal_form, SmithForm};

/// Rank over the rationals (fraction-free elimination).
pub fn rank(a: &IntMatrix) -> usize {
    if let Some(r) = a.to_small().and_then(|s| bareiss::rank(&s)) {
        return r;
    }
    bareiss::rank(a).expect("big integer arithmetic cannot overflow")
}

/// Determinant of a square matrix.
pub fn determinant(a: &IntMatrix) -> BigInt {
    if let Some(d) = a.to_small().and_then(|s| bareiss::determinant(&s)) {
        return BigInt::from(d);
    }
    bareiss::determinant(a).expect("big integer arithmetic cannot overflow")
}
