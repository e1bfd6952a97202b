//! Exact densities by enumerating the coefficient block.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use super::enumerate::{enumerate, Tally};
use super::{BallSpec, DensityPoint, EnumOptions, TargetSet};
use crate::error::Result;
use crate::lattice::count::count_in_cube;
use crate::linalg::bareiss;
use crate::linalg::hermite::{hermite_checked, saturation_checked};
use crate::linalg::{HermiteForm, Matrix};

/// Unsigned sum that starts in `u128` and spills into `BigUint`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Wide {
    small: u128,
    big: BigUint,
}

impl Wide {
    pub(crate) fn add(&mut self, v: u128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    pub(crate) fn add_big(&mut self, v: &BigUint) {
        self.big += v;
    }

    /// Adds `weight * value`.
    pub(crate) fn add_product(&mut self, weight: u128, value: &Count) {
        match value {
            Count::Small(v) => match weight.checked_mul(*v) {
                Some(p) => self.add(p),
                None => self.add_big(&(BigUint::from(weight) * *v)),
            },
            Count::Big(v) => self.add_big(&(v * weight)),
        }
    }

    pub(crate) fn merge(&mut self, other: Wide) {
        self.add(other.small);
        self.big += other.big;
    }

    pub(crate) fn total(&self) -> BigUint {
        &self.big + self.small
    }
}

pub(crate) enum Count {
    Small(u128),
    Big(BigUint),
}

impl Count {
    fn pow(self, m: u32) -> Count {
        match self {
            Count::Small(v) => match v.checked_pow(m) {
                Some(p) => Count::Small(p),
                None => Count::Big(BigUint::from(v).pow(m)),
            },
            Count::Big(v) => Count::Big(v.pow(m)),
        }
    }
}

/// `|L ∩ [-r, r]^n|` for the lattice spanned by an echelon basis.
pub(crate) fn lattice_count(hf: &HermiteForm<i128>, r: u64) -> Count {
    match count_in_cube(&hf.basis, &hf.pivot_rows, &(r as i128)) {
        Some(c) => Count::Small(c as u128),
        None => {
            let big = hf.widen();
            let c = count_in_cube(&big.basis, &big.pivot_rows, &BigInt::from(r)).expect("bigint");
            Count::Big(c.to_biguint().expect("counts are nonnegative"))
        }
    }
}

/// Hermite form of small coefficient matrices, retried in `BigInt` and
/// narrowed back (the basis of an `[-r, r]` matrix is never larger than
/// its minors, which fit `i128` for every admitted shape).
pub(crate) fn hermite_small(a: &Matrix<i128>) -> HermiteForm<i128> {
    hermite_checked(a, false).unwrap_or_else(|| narrow(&hermite_checked(&a.to_big(), false).expect("bigint")))
}

pub(crate) fn saturation_small(a: &Matrix<i128>) -> HermiteForm<i128> {
    saturation_checked(a).unwrap_or_else(|| narrow(&saturation_checked(&a.to_big()).expect("bigint")))
}

fn narrow(hf: &HermiteForm<BigInt>) -> HermiteForm<i128> {
    HermiteForm {
        basis: hf.basis.map(|v| v.to_i128()).expect("basis entries fit i128"),
        transform: Matrix::zeros(0, 0),
        pivot_rows: hf.pivot_rows.clone(),
        rank: hf.rank,
    }
}

pub(crate) fn rank_small(a: &Matrix<i128>) -> usize {
    bareiss::rank(a).unwrap_or_else(|| bareiss::rank(&a.to_big()).expect("bigint"))
}

#[derive(Default)]
pub(crate) struct SatTally {
    pub(crate) all: Wide,
    pub(crate) full_rank: Wide,
}

impl Tally for SatTally {
    fn merge(&mut self, other: Self) {
        self.all.merge(other.all);
        self.full_rank.merge(other.full_rank);
    }
}

impl SatTally {
    pub(crate) fn visit(&mut self, hf: &HermiteForm<i128>, n: usize, r: u64, m: u32, weight: u128) {
        let per_a = lattice_count(hf, r).pow(m);
        self.all.add_product(weight, &per_a);
        if hf.rank == n {
            self.full_rank.add_product(weight, &per_a);
        }
    }
}

impl Tally for Wide {
    fn merge(&mut self, other: Self) {
        Wide::merge(self, other);
    }
}

/// Exact `rho_r` of `set` in the ball of `spec`.
///
/// Solvability sets enumerate only the coefficient block: each `A`
/// contributes `|H_A ∩ B_r^n|^m` (or the saturation count over `Q`),
/// including rank-deficient `A`. The other sets count coefficient matrices
/// over `(2r+1)^{nk}`.
pub fn exact_density(spec: &BallSpec, set: TargetSet, opts: &EnumOptions) -> Result<DensityPoint> {
    let BallSpec { m, k, n, r } = *spec;
    let mode = opts.enumeration;
    if set.is_system_set() {
        let over_q = set == TargetSet::SatQ;
        let tally: SatTally = enumerate(n, k, r, mode, opts.budget, |t: &mut SatTally, a, w| {
            let hf = if over_q { saturation_small(a) } else { hermite_small(a) };
            t.visit(&hf, n, r, m as u32, w);
        })?;
        return Ok(DensityPoint {
            r,
            numerator: tally.all.total(),
            denominator: spec.total(),
            full_rank_numerator: Some(tally.full_rank.total()),
            ci: None,
            samples: None,
        });
    }
    let hits: Wide = enumerate(n, k, r, mode, opts.budget, |t: &mut Wide, a, w| {
        if matrix_member(a, set, n) {
            t.add(w);
        }
    })?;
    Ok(DensityPoint {
        r,
        numerator: hits.total(),
        denominator: spec.coefficient_count(),
        full_rank_numerator: None,
        ci: None,
        samples: None,
    })
}

/// Membership of a coefficient matrix in a matrix set.
pub(crate) fn matrix_member(a: &Matrix<i128>, set: TargetSet, n: usize) -> bool {
    match set {
        TargetSet::FullRank => rank_small(a) == n,
        TargetSet::RankEq(s) => rank_small(a) == s,
        TargetSet::Unimodular => {
            let hf = hermite_small(a);
            hf.rank == n && hf.pivot_product().is_some_and(|p| p.is_one())
        }
        TargetSet::SatZ | TargetSet::SatQ => unreachable!("system sets are counted per coefficient block"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Enumeration;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn density(m: usize, k: usize, n: usize, r: u64, set: TargetSet) -> BigRational {
        let spec = BallSpec::new(m, k, n, r).unwrap();
        let orbits = exact_density(&spec, set, &EnumOptions::default()).unwrap();
        let full = exact_density(
            &spec,
            set,
            &EnumOptions {
                enumeration: Enumeration::Full,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(orbits, full);
        orbits.ratio()
    }

    #[test]
    fn examples() {
        assert_eq!(density(1, 1, 1, 1, TargetSet::SatZ), q(7, 9));
        assert_eq!(density(1, 1, 1, 1, TargetSet::FullRank), q(2, 3));
        assert_eq!(density(1, 2, 1, 1, TargetSet::Unimodular), q(8, 9));
    }

    #[test]
    fn rank_sets_partition_the_ball() {
        let total: BigRational = (0..=2).map(|s| density(1, 2, 2, 1, TargetSet::RankEq(s))).sum();
        assert_eq!(total, q(1, 1));
        assert_eq!(
            density(1, 2, 2, 1, TargetSet::RankEq(2)),
            density(1, 2, 2, 1, TargetSet::FullRank)
        );
    }

    #[test]
    fn integer_solvability_implies_rational() {
        for (m, k, n, r) in [(1, 2, 1, 2), (2, 2, 2, 1), (1, 1, 2, 2), (1, 3, 2, 1)] {
            assert!(density(m, k, n, r, TargetSet::SatZ) <= density(m, k, n, r, TargetSet::SatQ));
        }
    }

    #[test]
    fn wide_spills_into_bigint() {
        let mut w = Wide::default();
        w.add(u128::MAX);
        w.add(2);
        assert_eq!(w.total(), BigUint::from(u128::MAX) + 2u32);
    }
}
