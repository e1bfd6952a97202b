//! Rank and determinant histograms of the coefficient ball.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};

use super::enumerate::{enumerate, Tally};
use super::exact::{rank_small, Wide};
use super::sums::greatest_divisor;
use super::EnumOptions;
use crate::error::{Error, Result};

#[derive(Default)]
struct RankTally(Vec<Wide>);

impl Tally for RankTally {
    fn merge(&mut self, other: Self) {
        if self.0.len() < other.0.len() {
            self.0.resize_with(other.0.len(), Wide::default);
        }
        for (mine, theirs) in self.0.iter_mut().zip(other.0) {
            mine.merge(theirs);
        }
    }
}

/// Counts of `n x k` matrices in `B_r^{nk}` by rank `0..=min(n, k)`.
pub fn rank_histogram(n: usize, k: usize, r: u64, opts: &EnumOptions) -> Result<Vec<BigUint>> {
    if n == 0 || k == 0 {
        return Err(Error::OutOfRange("n and k must be positive".into()));
    }
    let tally: RankTally = enumerate(n, k, r, opts.enumeration, opts.budget, |t: &mut RankTally, a, w| {
        let s = rank_small(a);
        if t.0.len() <= s {
            t.0.resize_with(s + 1, Wide::default);
        }
        t.0[s].add(w);
    })?;
    let mut counts: Vec<BigUint> = tally.0.iter().map(Wide::total).collect();
    counts.resize(n.min(k) + 1, BigUint::default());
    Ok(counts)
}

#[derive(Default)]
struct AbsDetTally(BTreeMap<u128, Wide>);

impl Tally for AbsDetTally {
    fn merge(&mut self, other: Self) {
        for (d, w) in other.0 {
            self.0.entry(d).or_default().merge(w);
        }
    }
}

/// Counts of `n x n` matrices in `B_r^{n^2}` by determinant.
///
/// Negating a column maps determinant `d` to `-d`, so the counts for `d`
/// and `-d` agree and are recovered from the `|det|` histogram.
pub fn det_histogram(n: usize, r: u64, opts: &EnumOptions) -> Result<BTreeMap<BigInt, BigUint>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let tally: AbsDetTally = enumerate(n, n, r, opts.enumeration, opts.budget, |t: &mut AbsDetTally, a, w| {
        t.0.entry(greatest_divisor(a).unwrap_or(0)).or_default().add(w);
    })?;
    let mut out = BTreeMap::new();
    for (d, w) in tally.0 {
        let total = w.total();
        if d == 0 {
            out.insert(BigInt::from(0), total);
        } else {
            let half = total / 2u32;
            out.insert(BigInt::from(d), half.clone());
            out.insert(-BigInt::from(d), half);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Enumeration;
    use crate::linalg::{determinant, IntMatrix};

    fn big(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn rank_examples() {
        let o = EnumOptions::default();
        assert_eq!(rank_histogram(1, 1, 1, &o).unwrap(), vec![big(1), big(2)]);
        assert_eq!(rank_histogram(1, 2, 1, &o).unwrap(), vec![big(1), big(8)]);
        let h = rank_histogram(2, 2, 1, &o).unwrap();
        assert_eq!(h.iter().sum::<BigUint>(), big(81));
        assert_eq!(h[0], big(1));
    }

    #[test]
    fn det_examples() {
        let o = EnumOptions::default();
        let h = det_histogram(1, 2, &o).unwrap();
        assert_eq!(h.len(), 5);
        assert!(h.values().all(|c| *c == big(1)));
        let h = det_histogram(2, 1, &o).unwrap();
        assert_eq!(h[&BigInt::from(0)], big(33));
        for (d, c) in &h {
            assert_eq!(&h[&-d], c);
        }
    }

    #[test]
    fn det_histogram_matches_direct_enumeration() {
        let full = EnumOptions {
            enumeration: Enumeration::Full,
            ..Default::default()
        };
        let h = det_histogram(2, 2, &full).unwrap();
        let mut direct: BTreeMap<BigInt, BigUint> = BTreeMap::new();
        for idx in 0..5u32.pow(4) {
            let e: Vec<i64> = (0..4).map(|i| (idx / 5u32.pow(i) % 5) as i64 - 2).collect();
            let a = IntMatrix::from_rows(&[[e[0], e[1]], [e[2], e[3]]]).unwrap();
            *direct.entry(determinant(&a)).or_default() += 1u32;
        }
        assert_eq!(h, direct);
        assert_eq!(det_histogram(2, 2, &EnumOptions::default()).unwrap(), direct);
    }
}
