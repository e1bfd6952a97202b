//! Smith normal form with both transforms.

use num_bigint::BigInt;

use super::matrix::{IntMatrix, Matrix};
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T = BigInt> {
    /// Unimodular `n x n` row transform `U`.
    pub left: Matrix<T>,
    /// Unimodular `k x k` column transform `V`.
    pub right: Matrix<T>,
    /// Invariant factors `d_1 | d_2 | ... | d_s`, all positive.
    pub diag: Vec<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The rectangular diagonal matrix `D = U * A * V`.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.left.rows(), self.right.rows());
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    pub fn widen(&self) -> SmithForm<BigInt> {
        SmithForm {
            left: self.left.to_big(),
            right: self.right.to_big(),
            diag: self.diag.iter().map(Scalar::to_bigint).collect(),
        }
    }
}

/// Eliminates column `t` below the pivot with row operations.
fn clear_column<T: Scalar>(d: &mut Matrix<T>, u: &mut Matrix<T>, t: usize) -> Option<bool> {
    let mut touched = false;
    for i in t + 1..d.rows() {
        if d.get(i, t).is_zero() {
            continue;
        }
        touched = true;
        let (a, b) = (d.get(t, t).clone(), d.get(i, t).clone());
        if b.is_multiple_of(&a) {
            let q = scalar::neg(&b.checked_div(&a)?)?;
            d.add_row_multiple(i, t, &q)?;
            u.add_row_multiple(i, t, &q)?;
            continue;
        }
        let (g, x, y) = scalar::ext_gcd(&a, &b)?;
        let z = scalar::neg(&b.checked_div(&g)?)?;
        let w = a.checked_div(&g)?;
        d.combine_rows(t, i, [&x, &y, &z, &w])?;
        u.combine_rows(t, i, [&x, &y, &z, &w])?;
    }
    Some(touched)
}

/// Eliminates row `t` right of the pivot with column operations.
fn clear_row<T: Scalar>(d: &mut Matrix<T>, v: &mut Matrix<T>, t: usize) -> Option<bool> {
    let mut touched = false;
    for j in t + 1..d.cols() {
        if d.get(t, j).is_zero() {
            continue;
        }
        touched = true;
        let (a, b) = (d.get(t, t).clone(), d.get(t, j).clone());
        if b.is_multiple_of(&a) {
            let q = scalar::neg(&b.checked_div(&a)?)?;
            d.add_col_multiple(j, t, &q)?;
            v.add_col_multiple(j, t, &q)?;
            continue;
        }
        let (g, x, y) = scalar::ext_gcd(&a, &b)?;
        let z = scalar::neg(&b.checked_div(&g)?)?;
        let w = a.checked_div(&g)?;
        d.combine_cols(t, j, [&x, &y, &z, &w])?;
        v.combine_cols(t, j, [&x, &y, &z, &w])?;
    }
    Some(touched)
}

/// Smith normal form; `None` on scalar overflow.
pub fn smith_checked<T: Scalar>(a: &Matrix<T>) -> Option<SmithForm<T>> {
    let (n, k) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::identity(n);
    let mut v = Matrix::identity(k);
    let mut diag = Vec::new();
    for t in 0..n.min(k) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..k {
                let e = d.get(i, j);
                if !e.is_zero() && best.map_or(true, |(bi, bj)| e.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let c = clear_column(&mut d, &mut u, t)?;
            let r = clear_row(&mut d, &mut v, t)?;
            if c || r {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..n).find(|&i| (t + 1..k).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one)?;
                    u.add_row_multiple(t, i, &one)?;
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
        diag.push(d.get(t, t).clone());
    }
    let snf = SmithForm {
        left: u,
        right: v,
        diag,
    };
    let check = snf.left.checked_mul(a)?.checked_mul(&snf.right)?;
    assert_eq!(check, snf.diagonal_matrix(), "Smith reconstruction U*A*V = D failed");
    Some(snf)
}

/// Smith normal form `U * A * V = D`, verified by exact multiplication.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    if let Some(small) = a.to_small() {
        if let Some(snf) = smith_checked(&small) {
            return snf.widen();
        }
    }
    smith_checked(a).expect("big integer arithmetic cannot overflow")
}

/// Greatest divisor of a full-rank matrix: the gcd of its maximal minors,
/// computed as the product of the invariant factors.
pub fn maximal_minor_gcd(a: &IntMatrix) -> Result<BigInt> {
    let required = a.rows().min(a.cols());
    let snf = smith_normal_form(a);
    if snf.rank() < required {
        return Err(Error::NotFullRank {
            rank: snf.rank(),
            required,
        });
    }
    Ok(snf.diag.iter().product())
}

/// Inverse of a unimodular matrix via its column Hermite form (which is the
/// identity, so the recorded transform is the inverse).
pub(crate) fn unimodular_inverse<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let hf = super::hermite::hermite_checked(m, true)?;
    debug_assert!(hf.rank == m.rows() && hf.basis == Matrix::identity(m.rows()));
    Some(hf.transform)
}
