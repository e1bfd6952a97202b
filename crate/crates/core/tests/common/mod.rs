//! Brute-force oracles, independent of the library's normal-form code.
//!
//! Matrices are row-major `&[i64]` with explicit shapes. Everything here is
//! computed from minors (Laplace expansion) or by direct enumeration.

#![allow(dead_code)]

use latdensity::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub fn int_matrix(rows: usize, cols: usize, data: &[i64]) -> IntMatrix {
    IntMatrix::new(rows, cols, data.iter().map(|&v| BigInt::from(v)).collect()).unwrap()
}

/// Laplace expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// All `s`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, s, &mut Vec::with_capacity(s), &mut out);
    out
}

/// gcd of all `s x s` minors (0 when they all vanish).
pub fn minor_gcd(a: &[i64], rows: usize, cols: usize, s: usize) -> i128 {
    let mut g: i128 = 0;
    for rs in subsets(rows, s) {
        for cs in subsets(cols, s) {
            let m: Vec<Vec<i128>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| a[i * cols + j] as i128).collect())
                .collect();
            g = g.gcd(&det(&m));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// Rank as the largest size of a nonvanishing minor.
pub fn rank_by_minors(a: &[i64], rows: usize, cols: usize) -> usize {
    (1..=rows.min(cols))
        .rev()
        .find(|&s| minor_gcd(a, rows, cols, s) != 0)
        .unwrap_or(0)
}

/// Greatest divisor of a rank-`rows` matrix.
pub fn greatest_divisor(a: &[i64], rows: usize, cols: usize) -> i128 {
    minor_gcd(a, rows, cols, rows)
}

/// `[A | b]` for a single column `b`.
pub fn augment(a: &[i64], rows: usize, cols: usize, b: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(rows * (cols + 1));
    for i in 0..rows {
        out.extend_from_slice(&a[i * cols..(i + 1) * cols]);
        out.push(b[i]);
    }
    out
}

/// Per-coefficient-matrix data for the column tests below.
pub struct MinorData {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub divisor: i128,
}

impl MinorData {
    pub fn new(a: &[i64], rows: usize, cols: usize) -> Self {
        let rank = rank_by_minors(a, rows, cols);
        let divisor = if rank == 0 { 0 } else { minor_gcd(a, rows, cols, rank) };
        Self {
            rows,
            cols,
            rank,
            divisor,
        }
    }

    /// `A x = b` over Q: rank does not grow.
    pub fn rational(&self, a: &[i64], b: &[i64]) -> bool {
        let aug = augment(a, self.rows, self.cols, b);
        rank_by_minors(&aug, self.rows, self.cols + 1) == self.rank
    }

    /// `A x = b` over Z: rank does not grow and the gcd of the rank-size
    /// minors does not drop.
    pub fn integral(&self, a: &[i64], b: &[i64]) -> bool {
        if self.rank == 0 {
            return b.iter().all(|&v| v == 0);
        }
        let aug = augment(a, self.rows, self.cols, b);
        if rank_by_minors(&aug, self.rows, self.cols + 1) != self.rank {
            return false;
        }
        minor_gcd(&aug, self.rows, self.cols + 1, self.rank) == self.divisor
    }
}

/// `A x = b` for nonsingular square `A` via `adj(A) b ≡ 0 (mod det A)`.
pub fn solvable_by_inverse(a: &[i64], n: usize, b: &[i64]) -> Option<bool> {
    let full: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| a[i * n + j] as i128).collect()).collect();
    let d = det(&full);
    if d == 0 {
        return None;
    }
    for j in 0..n {
        // Cramer: x_j = det(A with column j replaced by b) / det A.
        let mut m = full.clone();
        for i in 0..n {
            m[i][j] = b[i] as i128;
        }
        if det(&m) % d != 0 {
            return Some(false);
        }
    }
    Some(true)
}

/// Every vector of `len` entries in `[-r, r]`, in odometer order.
pub fn cube(len: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * r + 1) as u64;
    let total = side.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0i64; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % side) as i64 - r;
            idx /= side;
        }
        v
    })
}

/// The `idx`-th vector of `cube(len, r)`.
pub fn cube_point(len: usize, r: i64, mut idx: u64) -> Vec<i64> {
    let side = (2 * r + 1) as u64;
    let mut v = vec![0i64; len];
    for slot in v.iter_mut().rev() {
        *slot = (idx % side) as i64 - r;
        idx /= side;
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Z,
    Q,
}

/// `rho_r` by looping over every system `(A, B)` in the cube of radius `r`
/// and testing each column of `B` with the minor criteria.
pub fn direct_density(m: usize, k: usize, n: usize, r: u64, ring: Ring) -> BigRational {
    let r = r as i64;
    let side = (2 * r + 1) as u64;
    let a_total = side.pow((n * k) as u32);
    let b_len = n * m;
    let hits: u64 = (0..a_total)
        .into_par_iter()
        .map(|ai| {
            let a = cube_point(n * k, r, ai);
            if n == 1 {
                let g = a.iter().fold(0i64, |g, &v| g.gcd(&v));
                return cube(b_len, r)
                    .filter(|b| match ring {
                        Ring::Z => b.iter().all(|&v| if g == 0 { v == 0 } else { v % g == 0 }),
                        Ring::Q => g != 0 || b.iter().all(|&v| v == 0),
                    })
                    .count() as u64;
            }
            let data = MinorData::new(&a, n, k);
            cube(b_len, r)
                .filter(|b| {
                    (0..m).all(|c| {
                        let col: Vec<i64> = (0..n).map(|i| b[i * m + c]).collect();
                        match ring {
                            Ring::Z => data.integral(&a, &col),
                            Ring::Q => data.rational(&a, &col),
                        }
                    })
                })
                .count() as u64
        })
        .sum();
    let total = BigInt::from(side).pow((n * (k + m)) as u32);
    BigRational::new(BigInt::from(hits), total)
}

/// `F_{1,n,n}(r) = sum of 1/|det A|` over nonsingular `A` in the cube.
pub fn brute_gcd_sum_square(n: usize, r: u64) -> BigRational {
    let mut sum = BigRational::zero();
    for a in cube(n * n, r as i64) {
        let full: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| a[i * n + j] as i128).collect()).collect();
        let d = det(&full);
        if d != 0 {
            sum += BigRational::new(BigInt::one(), BigInt::from(d.abs()));
        }
    }
    sum
}

/// Points of `H_A` (rank `n`, `n x k`) in the cube `[-t, t]^n`.
pub fn brute_lattice_count(a: &[i64], n: usize, k: usize, t: u64) -> u64 {
    let data = MinorData::new(a, n, k);
    assert_eq!(data.rank, n);
    cube(n, t as i64).filter(|v| data.integral(a, v)).count() as u64
}
