//! Column-style Hermite normal form.
//!
//! Convention: `A * U = (H | 0)` with `U` unimodular and `H` in lower
//! echelon form. Pivot entries are positive and, in each pivot row, the
//! entries left of the pivot lie in `[0, pivot)`.

use num_bigint::BigInt;

use super::matrix::{IntMatrix, Matrix};
use super::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm<T = BigInt> {
    /// `n x rank` basis of the column lattice.
    pub basis: Matrix<T>,
    /// Unimodular `k x k` column-operation record.
    pub transform: Matrix<T>,
    /// Row index of each pivot, strictly increasing.
    pub pivot_rows: Vec<usize>,
    pub rank: usize,
}

impl<T: Scalar> HermiteForm<T> {
    pub fn pivot(&self, j: usize) -> &T {
        self.basis.get(self.pivot_rows[j], j)
    }

    /// Product of pivots; the index of the lattice in `Z^n` when `rank == n`.
    pub fn pivot_product(&self) -> Option<T> {
        (0..self.rank).try_fold(T::one(), |acc, j| scalar::mul(&acc, self.pivot(j)))
    }

    /// Integer coordinates `c` with `basis * c = v`, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[T]) -> Option<Option<Vec<T>>> {
        lattice_coordinates(&self.basis, &self.pivot_rows, v)
    }

    pub fn widen(&self) -> HermiteForm<BigInt> {
        HermiteForm {
            basis: self.basis.to_big(),
            transform: self.transform.to_big(),
            pivot_rows: self.pivot_rows.clone(),
            rank: self.rank,
        }
    }
}

/// Forward substitution through an echelon basis. Outer `None` means scalar
/// overflow, inner `None` means `v` is not a lattice vector.
pub(crate) fn lattice_coordinates<T: Scalar>(
    basis: &Matrix<T>,
    pivot_rows: &[usize],
    v: &[T],
) -> Option<Option<Vec<T>>> {
    assert_eq!(basis.rows(), v.len(), "vector length differs from ambient dimension");
    let mut c: Vec<T> = Vec::with_capacity(pivot_rows.len());
    for (j, &row) in pivot_rows.iter().enumerate() {
        let mut rest = v[row].clone();
        for (l, cl) in c.iter().enumerate() {
            rest = scalar::sub(&rest, &scalar::mul(basis.get(row, l), cl)?)?;
        }
        let p = basis.get(row, j);
        if !(rest.is_multiple_of(p)) {
            return Some(None);
        }
        c.push(rest.checked_div(p)?);
    }
    // Non-pivot rows must agree as well.
    let image = basis.mul_vec(&c)?;
    if image.as_slice() != v {
        return Some(None);
    }
    Some(Some(c))
}

/// Column HNF; `None` on scalar overflow. With `track = false` the returned
/// transform is empty and the work of maintaining it is skipped.
pub fn hermite_checked<T: Scalar>(a: &Matrix<T>, track: bool) -> Option<HermiteForm<T>> {
    let (n, k) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = if track {
        Matrix::identity(k)
    } else {
        Matrix::zeros(0, k)
    };
    let mut pivot_rows = Vec::new();
    let mut p = 0;
    for i in 0..n {
        if p == k {
            break;
        }
        for j in p + 1..k {
            if h.get(i, j).is_zero() {
                continue;
            }
            if h.get(i, p).is_zero() {
                h.swap_cols(p, j);
                u.swap_cols(p, j);
                continue;
            }
            let (a_ip, a_ij) = (h.get(i, p).clone(), h.get(i, j).clone());
            let (g, x, y) = scalar::ext_gcd(&a_ip, &a_ij)?;
            let z = scalar::neg(&a_ij.checked_div(&g)?)?;
            let w = a_ip.checked_div(&g)?;
            // det [[x, z], [y, w]] = (x*a + y*b) / g = 1
            h.combine_cols(p, j, [&x, &y, &z, &w])?;
            u.combine_cols(p, j, [&x, &y, &z, &w])?;
        }
        if h.get(i, p).is_zero() {
            continue;
        }
        if h.get(i, p).is_negative() {
            h.negate_col(p)?;
            u.negate_col(p)?;
        }
        let pivot = h.get(i, p).clone();
        for j in 0..p {
            let q = scalar::floor_div(h.get(i, j), &pivot)?;
            if !q.is_zero() {
                let f = scalar::neg(&q)?;
                h.add_col_multiple(j, p, &f)?;
                u.add_col_multiple(j, p, &f)?;
            }
        }
        pivot_rows.push(i);
        p += 1;
    }
    Some(HermiteForm {
        basis: h.columns(0..p),
        transform: u,
        pivot_rows,
        rank: p,
    })
}

/// Hermite normal form of the column lattice of `a`.
pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    if let Some(small) = a.to_small() {
        if let Some(hf) = hermite_checked(&small, true) {
            return hf.widen();
        }
    }
    hermite_checked(a, true).expect("big integer arithmetic cannot overflow")
}

/// Hermite form of `{v in Z^n : q v in H_A for some q > 0}`, the lattice
/// cut out of `Z^n` by the rational column span of `a`.
pub fn saturation(a: &IntMatrix) -> HermiteForm {
    if let Some(small) = a.to_small() {
        if let Some(hf) = saturation_checked(&small) {
            return hf.widen();
        }
    }
    saturation_checked(a).expect("big integer arithmetic cannot overflow")
}

pub(crate) fn saturation_checked<T: Scalar>(a: &Matrix<T>) -> Option<HermiteForm<T>> {
    let n = a.rows();
    let hf = hermite_checked(a, false)?;
    if hf.rank == n {
        return hermite_checked(&Matrix::identity(n), true);
    }
    if hf.rank == 0 {
        return hermite_checked(&Matrix::zeros(n, 0), true);
    }
    // U * H * V = D with D diagonal; the span of H meets Z^n in the lattice
    // spanned by the first `rank` columns of U^-1.
    let snf = super::smith::smith_checked(&hf.basis)?;
    let u_inv = super::smith::unimodular_inverse(&snf.left)?;
    hermite_checked(&u_inv.columns(0..hf.rank), true)
}

/// Positive pivots, zeros above them, and entries left of each pivot reduced into `[0, pivot)`.
pub fn is_reduced<T: Scalar>(hf: &HermiteForm<T>) -> bool {
    let b = &hf.basis;
    for (j, &row) in hf.pivot_rows.iter().enumerate() {
        let p = b.get(row, j);
        if !p.is_positive() {
            return false;
        }
        if (0..row).any(|i| !b.get(i, j).is_zero()) {
            return false;
        }
        if (0..j).any(|l| b.get(row, l).is_negative() || b.get(row, l) >= p) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::is_unimodular;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check(a: &IntMatrix, hf: &HermiteForm) {
        assert!(is_unimodular(&hf.transform));
        let au = a.checked_mul(&hf.transform).unwrap();
        assert_eq!(au.columns(0..hf.rank), hf.basis);
        assert!(au.columns(hf.rank..a.cols()).is_zero());
        assert!(is_reduced(hf));
    }

    #[test]
    fn coprime_row_generates_z() {
        let a = m(&[&[2, 3]]);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.rank, 1);
        assert_eq!(hf.basis, m(&[&[1]]));
        check(&a, &hf);
    }

    #[test]
    fn diagonal_is_already_reduced() {
        let a = m(&[&[2, 0], &[0, 1]]);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.rank, 2);
        assert_eq!(hf.basis, a);
        check(&a, &hf);
        // Brute-force: the only column lattice bases of this shape are
        // lower triangular [[2,0],[x,1]] with x in [0,1), i.e. x = 0.
    }

    #[test]
    fn zero_matrix_has_empty_basis() {
        let a = IntMatrix::zeros(2, 2);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.rank, 0);
        assert_eq!(hf.basis.cols(), 0);
        check(&a, &hf);
    }

    #[test]
    fn off_pivot_entries_are_reduced() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let hf = hermite_normal_form(&a);
        check(&a, &hf);
        assert_eq!(hf.rank, 3);
        // |det| = 90 is the lattice index.
        assert_eq!(hf.pivot_product().unwrap(), BigInt::from(90));
    }

    #[test]
    fn rank_deficient_skips_rows() {
        let a = m(&[&[0, 0], &[2, 4], &[1, 2]]);
        let hf = hermite_normal_form(&a);
        check(&a, &hf);
        assert_eq!(hf.rank, 1);
        assert_eq!(hf.pivot_rows, vec![1]);
        assert_eq!(hf.basis, m(&[&[0], &[2], &[1]]));
    }

    #[test]
    fn big_entries_fall_back_to_bigint() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(7);
        let a = IntMatrix::new(1, 2, vec![huge.clone() * 2, huge.clone() * 3]).unwrap();
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.basis.get(0, 0), &huge);
        check(&a, &hf);
    }

    #[test]
    fn saturation_examples() {
        let full = saturation(&m(&[&[2, 0], &[0, 2]]));
        assert_eq!(full.basis, IntMatrix::identity(2));
        let line = saturation(&m(&[&[2], &[4]]));
        assert_eq!(line.basis, m(&[&[1], &[2]]));
        let id = saturation(&IntMatrix::identity(3));
        assert_eq!(id.basis, IntMatrix::identity(3));
        let zero = saturation(&IntMatrix::zeros(2, 3));
        assert_eq!(zero.rank, 0);
    }

    #[test]
    fn saturation_index_divides_lattice_index() {
        let a = m(&[&[6, 4], &[3, 2], &[9, 8]]);
        let h = hermite_normal_form(&a);
        let s = saturation(&a);
        assert_eq!(s.rank, h.rank);
        // Every generator lies in the saturation.
        for j in 0..a.cols() {
            assert!(s.coordinates(&a.col(j)).unwrap().is_some());
        }
    }

    #[test]
    fn membership_by_coordinates() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let hf = hermite_normal_form(&a);
        let yes = hf.coordinates(&[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(yes, Some(vec![BigInt::from(2), BigInt::from(3)]));
        assert_eq!(hf.coordinates(&[BigInt::from(1), BigInt::from(3)]).unwrap(), None);
    }
}
