use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an integer scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Arbitrary-precision integer matrix.
pub type IntMatrix = Matrix<BigInt>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let k = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n * k);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != k {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&v| T::from_i64(v).expect("i64 fits every scalar")));
        }
        Ok(Self { rows: n, cols: k, data })
    }

    /// Column vector from entries.
    pub fn column(entries: &[T]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let cols = range.len();
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[range.clone()]);
        }
        Self {
            rows: self.rows,
            cols,
            data,
        }
    }

    /// `(self | other)`
    pub fn augment(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot augment {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Exact product; `None` on scalar overflow.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = scalar::mul_add(&out.data[idx], a, other.get(l, j))?;
                }
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(T::zero(), |acc, (a, b)| scalar::mul_add(&acc, a, b))
            })
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_else(T::zero)
    }

    pub fn map<U, F: Fn(&T) -> Option<U>>(&self, f: F) -> Option<Matrix<U>> {
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Option<Vec<_>>>()?,
        })
    }

    pub fn to_big(&self) -> IntMatrix {
        self.map(|v| Some(v.to_bigint())).expect("widening never fails")
    }

    // Row and column operations shared by the normal form routines.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = scalar::neg(&self.data[idx])?;
        }
        Some(())
    }

    pub(crate) fn negate_col(&mut self, c: usize) -> Option<()> {
        for i in 0..self.rows {
            let idx = i * self.cols + c;
            self.data[idx] = scalar::neg(&self.data[idx])?;
        }
        Some(())
    }

    /// `row[dst] += factor * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &T) -> Option<()> {
        if factor.is_zero() {
            return Some(());
        }
        for j in 0..self.cols {
            let v = scalar::mul_add(self.get(dst, j), factor, self.get(src, j))?;
            self.set(dst, j, v);
        }
        Some(())
    }

    /// `col[dst] += factor * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &T) -> Option<()> {
        if factor.is_zero() {
            return Some(());
        }
        for i in 0..self.rows {
            let v = scalar::mul_add(self.get(i, dst), factor, self.get(i, src))?;
            self.set(i, dst, v);
        }
        Some(())
    }

    /// Replaces rows `(a, b)` by `(x*a + y*b, z*a + w*b)`.
    pub(crate) fn combine_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [&T; 4]) -> Option<()> {
        for j in 0..self.cols {
            let (va, vb) = (self.get(a, j).clone(), self.get(b, j).clone());
            self.set(a, j, scalar::add(&scalar::mul(x, &va)?, &scalar::mul(y, &vb)?)?);
            self.set(b, j, scalar::add(&scalar::mul(z, &va)?, &scalar::mul(w, &vb)?)?);
        }
        Some(())
    }

    /// Replaces columns `(a, b)` by `(x*a + y*b, z*a + w*b)`.
    pub(crate) fn combine_cols(&mut self, a: usize, b: usize, [x, y, z, w]: [&T; 4]) -> Option<()> {
        for i in 0..self.rows {
            let (va, vb) = (self.get(i, a).clone(), self.get(i, b).clone());
            self.set(i, a, scalar::add(&scalar::mul(x, &va)?, &scalar::mul(y, &vb)?)?);
            self.set(i, b, scalar::add(&scalar::mul(z, &va)?, &scalar::mul(w, &vb)?)?);
        }
        Some(())
    }
}

impl IntMatrix {
    /// Narrows to the `i128` fast path when every entry fits in an `i64`,
    /// which leaves headroom for the products the eliminations form.
    pub fn to_small(&self) -> Option<Matrix<i128>> {
        let limit = BigInt::from(i64::MAX);
        self.map(|v| {
            if v.magnitude() <= limit.magnitude() {
                i128::from_bigint(v)
            } else {
                None
            }
        })
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// Square with determinant `+1` or `-1`.
pub fn is_unimodular<T: Scalar>(m: &Matrix<T>) -> bool {
    m.rows() == m.cols() && super::bareiss::determinant(m).is_some_and(|d| d.abs().is_one())
}
