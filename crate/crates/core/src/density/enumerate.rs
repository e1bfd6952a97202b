//! Exhaustive enumeration of `n x k` coefficient matrices with entries in
//! `[-r, r]`.
//!
//! Rank, the column lattice, its saturation, the greatest divisor and
//! `|det|` are all unchanged by permuting columns or negating a column. In
//! [`Enumeration::Orbits`] mode a matrix is therefore visited once per
//! multiset of sign-normalised columns (zero, or first nonzero entry
//! positive), weighted by the size of its orbit:
//! `k! / prod(mult!) * 2^(nonzero columns)`.
//!
//! Work is split into chunks keyed by the first column index; chunk results
//! are combined by exact addition, so the outcome does not depend on how
//! chunks are scheduled.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Largest `k` whose orbit weights `k! 2^k` fit in `u128`.
pub const MAX_COLUMNS: usize = 24;

/// Largest `(2r+1)^n` for which the column candidates are materialised.
pub const MAX_COLUMN_VECTORS: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Enumeration {
    /// One representative per column permutation/sign orbit.
    #[default]
    Orbits,
    /// Every matrix, for cross-validation.
    Full,
}

/// Per-chunk accumulator.
pub(crate) trait Tally: Default + Send {
    fn merge(&mut self, other: Self);
}

/// Number of matrices visited for the given shape, or `None` if it does not
/// fit in `u128`.
pub fn enumeration_size(n: usize, k: usize, r: u64, mode: Enumeration) -> Option<u128> {
    let side = 2 * r as u128 + 1;
    match mode {
        Enumeration::Full => checked_pow(side, n * k),
        Enumeration::Orbits => {
            let reps = (checked_pow(side, n)? - 1) / 2 + 1;
            multiset_count(reps, k)
        }
    }
}

fn checked_pow(base: u128, e: usize) -> Option<u128> {
    (0..e).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

/// `binom(len + k - 1, k)`.
fn multiset_count(len: u128, k: usize) -> Option<u128> {
    let mut acc = 1u128;
    for i in 0..k as u128 {
        // acc = binom(len + i - 1, i) * (len + i) / (i + 1) stays integral.
        acc = acc.checked_mul(len + i)? / (i + 1);
    }
    Some(acc)
}

/// Sign-normalised vectors of `[-r, r]^n`, zero vector first.
fn representatives(n: usize, r: i128) -> Vec<Vec<i128>> {
    let mut out = vec![vec![0; n]];
    let mut v = vec![-r; n];
    loop {
        if let Some(first) = v.iter().find(|x| **x != 0) {
            if *first > 0 {
                out.push(v.clone());
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < r {
                v[i] += 1;
                break;
            }
            v[i] = -r;
        }
    }
}

/// Runs `visit(tally, A, weight)` over the enumeration and sums the tallies.
pub(crate) fn enumerate<S, F>(n: usize, k: usize, r: u64, mode: Enumeration, budget: u128, visit: F) -> Result<S>
where
    S: Tally,
    F: Fn(&mut S, &Matrix<i128>, u128) + Sync,
{
    if k > MAX_COLUMNS {
        return Err(Error::OutOfRange(format!(
            "enumeration supports at most {MAX_COLUMNS} columns"
        )));
    }
    let required = enumeration_size(n, k, r, mode).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let side_pow = enumeration_size(n, 1, r, Enumeration::Full).unwrap_or(u128::MAX);
    if side_pow > MAX_COLUMN_VECTORS {
        return Err(Error::OutOfRange(format!(
            "{side_pow} candidate columns exceed the enumeration limit {MAX_COLUMN_VECTORS}"
        )));
    }
    let r = r as i128;
    let reps = match mode {
        Enumeration::Orbits => representatives(n, r),
        Enumeration::Full => {
            let mut all = representatives(n, r);
            let negated: Vec<Vec<i128>> = all[1..].iter().map(|v| v.iter().map(|x| -x).collect()).collect();
            all.extend(negated);
            all
        }
    };
    let factorials: Vec<u128> = (0..=k as u128)
        .scan(1u128, |f, i| {
            *f *= i.max(1);
            Some(*f)
        })
        .collect();
    let total = (0..reps.len())
        .into_par_iter()
        .map(|first| match mode {
            Enumeration::Orbits => orbit_chunk(&reps, n, k, first, &factorials, &visit),
            Enumeration::Full => full_chunk(&reps, n, k, first, &visit),
        })
        .reduce(S::default, |mut a, b| {
            a.merge(b);
            a
        });
    Ok(total)
}

fn set_column(a: &mut Matrix<i128>, j: usize, v: &[i128]) {
    for (i, x) in v.iter().enumerate() {
        a.set(i, j, *x);
    }
}

/// Nondecreasing index sequences starting at `first`.
fn orbit_chunk<S: Tally, F: Fn(&mut S, &Matrix<i128>, u128)>(
    reps: &[Vec<i128>],
    n: usize,
    k: usize,
    first: usize,
    factorials: &[u128],
    visit: &F,
) -> S {
    let mut tally = S::default();
    let mut a = Matrix::<i128>::zeros(n, k);
    let mut idx = vec![first; k];
    for j in 0..k {
        set_column(&mut a, j, &reps[first]);
    }
    loop {
        visit(&mut tally, &a, orbit_weight(&idx, factorials));
        let Some(p) = (1..k).rev().find(|&p| idx[p] + 1 < reps.len()) else {
            return tally;
        };
        let next = idx[p] + 1;
        for q in p..k {
            idx[q] = next;
            set_column(&mut a, q, &reps[next]);
        }
    }
}

fn orbit_weight(idx: &[usize], factorials: &[u128]) -> u128 {
    let k = idx.len();
    let mut w = factorials[k];
    let mut run = 1;
    for q in 1..=k {
        if q < k && idx[q] == idx[q - 1] {
            run += 1;
        } else {
            w /= factorials[run];
            run = 1;
        }
    }
    let nonzero = idx.iter().filter(|&&i| i != 0).count();
    w << nonzero
}

/// All matrices whose first column is `reps[first]`.
fn full_chunk<S: Tally, F: Fn(&mut S, &Matrix<i128>, u128)>(
    reps: &[Vec<i128>],
    n: usize,
    k: usize,
    first: usize,
    visit: &F,
) -> S {
    let mut tally = S::default();
    let mut a = Matrix::<i128>::zeros(n, k);
    set_column(&mut a, 0, &reps[first]);
    let mut idx = vec![0usize; k];
    for j in 1..k {
        set_column(&mut a, j, &reps[0]);
    }
    loop {
        visit(&mut tally, &a, 1);
        let Some(p) = (1..k).rev().find(|&p| idx[p] + 1 < reps.len()) else {
            return tally;
        };
        idx[p] += 1;
        set_column(&mut a, p, &reps[idx[p]]);
        for q in p + 1..k {
            idx[q] = 0;
            set_column(&mut a, q, &reps[0]);
        }
    }
}
