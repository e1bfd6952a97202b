//! Lattice points of a sublattice inside the cube `[-r, r]^n`.
//!
//! Points are `H c` for the echelon basis `H`. The coordinates are chosen
//! one at a time: each row of `H` whose last nonzero entry sits in column
//! `j` bounds `c_j` to an interval once `c_0..c_{j-1}` are fixed. The last
//! coordinate is counted as an interval length, and when the final level is
//! bounded by a single row the last two levels collapse into two floor sums,
//! so the cost is governed by the first `rank - 2` coordinates only.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::Sublattice;
use crate::error::{Error, Result};
use crate::linalg::scalar::{self, Scalar};
use crate::linalg::Matrix;

/// Number of points of `lattice` in the closed cube `[-r, r]^n`.
pub fn count_points(lattice: &Sublattice, r: u64) -> BigUint {
    if let Some((basis, pivots)) = lattice.small_basis() {
        if r <= 1 << 40 {
            if let Some(c) = count_in_cube(basis, pivots, &i128::from(r)) {
                return BigUint::from(u128::try_from(c).expect("counts are nonnegative"));
            }
        }
    }
    let hf = lattice.hermite();
    count_in_cube(&hf.basis, &hf.pivot_rows, &BigInt::from(r))
        .expect("big integer arithmetic cannot overflow")
        .to_biguint()
        .expect("counts are nonnegative")
}

/// `|gZ ∩ [-r, r]| = 2 floor(r / g) + 1`.
pub fn count_points_fastpath_dim1(g: u64, r: u64) -> Result<u64> {
    if g == 0 {
        return Err(Error::OutOfRange("lattice generator must be positive".into()));
    }
    Ok(2 * (r / g) + 1)
}

/// Reference count: tests every point of the cube for membership. Only
/// usable for small `r` and `n`.
pub fn cube_scan_count(lattice: &Sublattice, r: u64) -> u64 {
    let n = lattice.ambient_dim();
    let side = 2 * r + 1;
    let total = side.pow(n as u32);
    let r = r as i64;
    (0..total)
        .filter(|&idx| {
            let mut rest = idx;
            let v: Vec<BigInt> = (0..n)
                .map(|_| {
                    let c = (rest % side) as i64 - r;
                    rest /= side;
                    BigInt::from(c)
                })
                .collect();
            lattice.contains(&v)
        })
        .count() as u64
}

/// Generic counting kernel; `None` on scalar overflow.
pub(crate) fn count_in_cube<T: Scalar>(basis: &Matrix<T>, pivot_rows: &[usize], r: &T) -> Option<T> {
    let s = basis.cols();
    if s == 0 {
        return Some(T::one());
    }
    debug_assert_eq!(pivot_rows.len(), s);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); s];
    for i in 0..basis.rows() {
        if let Some(j) = (0..s).rev().find(|&j| !basis.get(i, j).is_zero()) {
            groups[j].push(i);
        }
    }
    let kernel = Kernel { basis, groups, r };
    let mut acc = vec![T::zero(); basis.rows()];
    kernel.level(0, &mut acc)
}

struct Kernel<'a, T> {
    basis: &'a Matrix<T>,
    groups: Vec<Vec<usize>>,
    r: &'a T,
}

impl<T: Scalar> Kernel<'_, T> {
    /// Interval of admissible `c_j` given the partial row sums `acc`.
    fn interval(&self, j: usize, acc: &[T]) -> Option<Option<(T, T)>> {
        let r = self.r;
        let neg_r = scalar::neg(r)?;
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for &i in &self.groups[j] {
            let h = self.basis.get(i, j);
            let a = &acc[i];
            let up = scalar::sub(r, a)?;
            let down = scalar::sub(&neg_r, a)?;
            let (l, u) = if h.is_positive() {
                (scalar::ceil_div(&down, h)?, scalar::floor_div(&up, h)?)
            } else {
                (scalar::ceil_div(&up, h)?, scalar::floor_div(&down, h)?)
            };
            lo = Some(match lo {
                Some(x) if x > l => x,
                _ => l,
            });
            hi = Some(match hi {
                Some(x) if x < u => x,
                _ => u,
            });
        }
        let (lo, hi) = (
            lo.expect("pivot row bounds every level"),
            hi.expect("pivot row bounds every level"),
        );
        Some((lo <= hi).then_some((lo, hi)))
    }

    fn level(&self, j: usize, acc: &mut Vec<T>) -> Option<T> {
        let s = self.basis.cols();
        let Some((lo, hi)) = self.interval(j, acc)? else {
            return Some(T::zero());
        };
        let len = scalar::add(&scalar::sub(&hi, &lo)?, &T::one())?;
        if j + 1 == s {
            return Some(len);
        }
        if j + 2 == s && self.groups[s - 1].len() == 1 {
            return self.last_two(j, acc, &lo, &len);
        }
        let rows: Vec<usize> = (0..self.basis.rows())
            .filter(|&i| !self.basis.get(i, j).is_zero())
            .collect();
        let saved: Vec<T> = rows.iter().map(|&i| acc[i].clone()).collect();
        let mut total = T::zero();
        let mut c = lo;
        while c <= hi {
            for (&i, base) in rows.iter().zip(&saved) {
                acc[i] = scalar::mul_add(base, self.basis.get(i, j), &c)?;
            }
            total = scalar::add(&total, &self.level(j + 1, acc)?)?;
            c = scalar::add(&c, &T::one())?;
        }
        for (&i, base) in rows.iter().zip(saved) {
            acc[i] = base;
        }
        Some(total)
    }

    /// Sum over `c_j` in `[lo, lo + len)` of the number of admissible
    /// `c_{j+1}`, bounded by the single row `i` with positive pivot `h`:
    /// `floor((r - a - b c) / h) + floor((r + a + b c) / h) + 1`.
    fn last_two(&self, j: usize, acc: &[T], lo: &T, len: &T) -> Option<T> {
        let i = self.groups[j + 1][0];
        let h = self.basis.get(i, j + 1);
        let b = self.basis.get(i, j);
        let a0 = scalar::mul_add(&acc[i], b, lo)?;
        let r = self.r;
        let first = scalar::floor_sum(len, h, &scalar::neg(b)?, &scalar::sub(r, &a0)?)?;
        let second = scalar::floor_sum(len, h, b, &scalar::add(r, &a0)?)?;
        scalar::add(&scalar::add(&first, &second)?, len)
    }
}

/// [`count_points`] narrowed to `u128`.
pub fn count_points_u128(lattice: &Sublattice, r: u64) -> Option<u128> {
    count_points(lattice, r).to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn lattice(rows: &[&[i64]]) -> Sublattice {
        Sublattice::from_generators(&IntMatrix::from_rows(rows).unwrap())
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_points(&Sublattice::full(2), 3), BigUint::from(49u32));
        assert_eq!(count_points(&lattice(&[&[2, 0], &[0, 1]]), 2), BigUint::from(15u32));
        let origin = Sublattice::from_generators(&IntMatrix::zeros(3, 2));
        for r in [0, 1, 7] {
            assert_eq!(count_points(&origin, r), BigUint::from(1u32));
        }
    }

    #[test]
    fn fastpath_examples() {
        assert_eq!(count_points_fastpath_dim1(1, 5).unwrap(), 11);
        assert_eq!(count_points_fastpath_dim1(2, 5).unwrap(), 5);
        assert_eq!(count_points_fastpath_dim1(3, 2).unwrap(), 1);
        assert!(count_points_fastpath_dim1(0, 2).is_err());
        for g in 1..8 {
            for r in 0..20 {
                let l = lattice(&[&[g as i64]]);
                assert_eq!(
                    count_points_u128(&l, r),
                    Some(count_points_fastpath_dim1(g, r).unwrap() as u128)
                );
            }
        }
    }

    #[test]
    fn matches_cube_scan() {
        let cases: &[&[&[i64]]] = &[
            &[&[2, 1], &[1, 3]],
            &[&[3, 1, 0], &[0, 2, 5], &[1, 1, 4]],
            &[&[2], &[4], &[-6]],
            &[&[1, 0], &[2, 1], &[3, 5]],
            &[&[0, 0], &[0, 3], &[0, 1]],
            &[&[4, 6, 2], &[-2, 3, 1]],
        ];
        for rows in cases {
            let l = lattice(rows);
            for r in 0..=6 {
                assert_eq!(
                    count_points_u128(&l, r),
                    Some(cube_scan_count(&l, r) as u128),
                    "{rows:?} r={r}"
                );
            }
        }
    }

    #[test]
    fn huge_radius_uses_bigint() {
        let l = Sublattice::full(2);
        let r = 1u64 << 50;
        let side = BigUint::from(2 * r + 1);
        assert_eq!(count_points(&l, r), &side * &side);
    }
}
