//! Fraction-free (Bareiss) elimination for rank and determinant.

use super::matrix::Matrix;
use super::scalar::{self, Scalar};

/// Rank over the rationals; `None` on scalar overflow.
pub fn rank<T: Scalar>(a: &Matrix<T>) -> Option<usize> {
    let mut m = a.clone();
    let (n, k) = (m.rows(), m.cols());
    let mut prev = T::one();
    let mut r = 0;
    for col in 0..k {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let pivot = m.get(r, col).clone();
        for i in r + 1..n {
            let lead = m.get(i, col).clone();
            for j in col + 1..k {
                let num = scalar::sub(&scalar::mul(&pivot, m.get(i, j))?, &scalar::mul(&lead, m.get(r, j))?)?;
                // Exact by Sylvester's identity.
                m.set(i, j, num.checked_div(&prev)?);
            }
            m.set(i, col, T::zero());
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

/// Determinant of a square matrix; `None` on scalar overflow.
pub fn determinant<T: Scalar>(a: &Matrix<T>) -> Option<T> {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Some(T::one());
    }
    let mut m = a.clone();
    let mut sign_flip = false;
    let mut prev = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
            return Some(T::zero());
        };
        if p != c {
            m.swap_rows(c, p);
            sign_flip = !sign_flip;
        }
        let pivot = m.get(c, c).clone();
        for i in c + 1..n {
            let lead = m.get(i, c).clone();
            for j in c + 1..n {
                let num = scalar::sub(&scalar::mul(&pivot, m.get(i, j))?, &scalar::mul(&lead, m.get(c, j))?)?;
                m.set(i, j, num.checked_div(&prev)?);
            }
            m.set(i, c, T::zero());
        }
        prev = pivot;
    }
    let det = m.get(n - 1, n - 1).clone();
    if sign_flip {
        scalar::neg(&det)
    } else {
        Some(det)
    }
}
