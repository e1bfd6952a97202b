//! Sublattices of `Z^n`, their point counts in the cubes `[-r, r]^n`, and
//! the Ehrhart quasipolynomials of those counts.

pub mod combinatorics;
pub mod count;
pub mod quasi;

use num_bigint::BigInt;

use crate::linalg::hermite::lattice_coordinates;
use crate::linalg::{self, HermiteForm, IntMatrix, Matrix};

pub use combinatorics::{binomial_poly, stirling_first, StirlingTable};
pub use count::{count_points, count_points_fastpath_dim1, cube_scan_count};
pub use quasi::{coefficient_bound_check, ehrhart_interpolate, h_vector, HVector, QuasiPolynomial};

/// Column lattice `H_A` in Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    hermite: HermiteForm,
    small: Option<(Matrix<i128>, Vec<usize>)>,
    det: Option<BigInt>,
}

impl Sublattice {
    /// Lattice generated by the columns of `a`.
    pub fn from_generators(a: &IntMatrix) -> Self {
        Self::from_hermite(linalg::hermite_normal_form(a))
    }

    pub fn from_hermite(hermite: HermiteForm) -> Self {
        let n = hermite.basis.rows();
        let det = (hermite.rank == n).then(|| hermite.pivot_product().expect("bigint"));
        let limit = BigInt::from(i64::MAX);
        let small = hermite
            .basis
            .map(|v| {
                if v.magnitude() <= limit.magnitude() {
                    i128::try_from(v).ok()
                } else {
                    None
                }
            })
            .map(|b| (b, hermite.pivot_rows.clone()));
        Self { hermite, small, det }
    }

    /// `Z^n`.
    pub fn full(n: usize) -> Self {
        Self::from_generators(&IntMatrix::identity(n))
    }

    pub fn hermite(&self) -> &HermiteForm {
        &self.hermite
    }

    pub(crate) fn small_basis(&self) -> Option<(&Matrix<i128>, &[usize])> {
        self.small.as_ref().map(|(b, p)| (b, p.as_slice()))
    }

    pub fn ambient_dim(&self) -> usize {
        self.hermite.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.hermite.rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_dim()
    }

    /// Index `|Z^n : L|`, defined for full-rank lattices.
    pub fn det(&self) -> Option<&BigInt> {
        self.det.as_ref()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        lattice_coordinates(&self.hermite.basis, &self.hermite.pivot_rows, v)
            .expect("bigint")
            .is_some()
    }

    /// Rational span of the lattice intersected with `Z^n`.
    pub fn saturation(&self) -> Self {
        Self::from_hermite(linalg::saturation(&self.hermite.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_is_pivot_product() {
        let l = Sublattice::from_generators(&IntMatrix::from_rows(&[[2, 1], [0, 3]]).unwrap());
        assert_eq!(l.det(), Some(&BigInt::from(6)));
        let low = Sublattice::from_generators(&IntMatrix::from_rows(&[[2], [4]]).unwrap());
        assert_eq!(low.det(), None);
        assert_eq!(low.rank(), 1);
        assert!(low.contains(&[BigInt::from(-4), BigInt::from(-8)]));
        assert!(!low.contains(&[BigInt::from(1), BigInt::from(2)]));
        assert!(low.saturation().contains(&[BigInt::from(1), BigInt::from(2)]));
    }
}
