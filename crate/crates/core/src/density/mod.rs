//! Densities of matrix and system sets in the cubes `B_r`, measured exactly
//! by enumerating coefficient blocks or estimated by seeded sampling.
//!
//! A system `A X = B` has `A` of size `n x k` and `B` of size `n x m`, all
//! entries in `[-r, r]`. Solvable right-hand sides are counted per `A`: over
//! `Z` each column of `B` must lie in the column lattice `H_A`, so `A`
//! contributes `|H_A ∩ B_r^n|^m` solvable systems; over `Q` the saturation of
//! `H_A` takes its place.

mod enumerate;
mod exact;
mod histogram;
mod monte_carlo;
mod sums;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use enumerate::{enumeration_size, Enumeration};
pub use exact::exact_density;
pub use histogram::{det_histogram, rank_histogram};
pub use monte_carlo::{mc_density, wilson_interval, Z_95};
pub use sums::{
    conjecture_probe, gcd_sum_f, gcd_sum_vs_density_report, structured_sum_s, ConjectureReport, ConjectureRow,
    GcdSumResult, LinkageRow,
};

/// Default cap on the number of enumerated coefficient matrices.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Largest `n * k` (and `n * m`) accepted by the enumerators.
pub const MAX_ENTRIES: usize = 64;

/// Dimensions of a system `A X = B` and the radius of the cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BallSpec {
    /// Rank of the group `Z^m`: columns of `B`.
    pub m: usize,
    /// Unknowns: columns of `A`.
    pub k: usize,
    /// Equations: rows of `A` and `B`.
    pub n: usize,
    pub r: u64,
}

impl BallSpec {
    pub fn new(m: usize, k: usize, n: usize, r: u64) -> Result<Self> {
        if m == 0 || k == 0 || n == 0 {
            return Err(Error::OutOfRange(format!(
                "m, k, n must be positive (got {m}, {k}, {n})"
            )));
        }
        if n * k > MAX_ENTRIES || n * m > MAX_ENTRIES {
            return Err(Error::OutOfRange(format!(
                "matrices with more than {MAX_ENTRIES} entries are not supported"
            )));
        }
        if r > i64::MAX as u64 / 4 {
            return Err(Error::OutOfRange(format!("radius {r} is too large")));
        }
        Ok(Self { m, k, n, r })
    }

    pub fn with_radius(self, r: u64) -> Result<Self> {
        Self::new(self.m, self.k, self.n, r)
    }

    /// `(2r+1)^{nk}`.
    pub fn coefficient_count(&self) -> BigUint {
        side(self.r).pow((self.n * self.k) as u32)
    }

    /// `(2r+1)^{n(k+m)}`.
    pub fn total(&self) -> BigUint {
        side(self.r).pow((self.n * (self.k + self.m)) as u32)
    }
}

fn side(r: u64) -> BigUint {
    BigUint::from(2 * r + 1)
}

/// Sets whose density is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetSet {
    /// Systems solvable over `Z^m`.
    SatZ,
    /// Systems solvable over `Q^m`.
    SatQ,
    /// Coefficient matrices of rank `n`.
    FullRank,
    /// Rank `n` with greatest divisor 1.
    Unimodular,
    /// Coefficient matrices of rank exactly `s`.
    RankEq(usize),
}

impl TargetSet {
    /// Whether the set consists of systems rather than coefficient matrices.
    pub fn is_system_set(&self) -> bool {
        matches!(self, TargetSet::SatZ | TargetSet::SatQ)
    }
}

impl fmt::Display for TargetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSet::SatZ => f.write_str("sat-z"),
            TargetSet::SatQ => f.write_str("sat-q"),
            TargetSet::FullRank => f.write_str("full-rank"),
            TargetSet::Unimodular => f.write_str("unimodular"),
            TargetSet::RankEq(s) => write!(f, "rank-eq-{s}"),
        }
    }
}

impl FromStr for TargetSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        match norm.as_str() {
            "sat-z" => Ok(TargetSet::SatZ),
            "sat-q" => Ok(TargetSet::SatQ),
            "full-rank" => Ok(TargetSet::FullRank),
            "unimodular" => Ok(TargetSet::Unimodular),
            other => other
                .strip_prefix("rank-eq-")
                .and_then(|v| v.parse().ok())
                .map(TargetSet::RankEq)
                .ok_or_else(|| {
                    Error::Domain(format!(
                        "unknown set '{s}' (expected sat-z, sat-q, full-rank, unimodular or rank-eq-<s>)"
                    ))
                }),
        }
    }
}

impl Serialize for TargetSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    MonteCarlo,
}

/// Enumeration settings shared by the exact operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub budget: u128,
    pub enumeration: Enumeration,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            enumeration: Enumeration::Orbits,
        }
    }
}

/// Two-sided confidence interval for a proportion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }
}

/// `rho_r(M) = |M ∩ T_r| / |T_r|`, or a sampled estimate of it.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityPoint {
    pub r: u64,
    pub numerator: BigUint,
    pub denominator: BigUint,
    /// Members whose coefficient matrix has rank `n` (solvability sets only).
    pub full_rank_numerator: Option<BigUint>,
    pub ci: Option<Interval>,
    pub samples: Option<u64>,
}

impl DensityPoint {
    pub fn ratio(&self) -> BigRational {
        ratio(&self.numerator, &self.denominator)
    }

    pub fn ratio_f64(&self) -> f64 {
        to_f64(&self.ratio())
    }

    pub fn full_rank_ratio(&self) -> Option<BigRational> {
        self.full_rank_numerator
            .as_ref()
            .map(|num| ratio(num, &self.denominator))
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Nearest-ish `f64` of a rational, robust to huge numerators/denominators.
pub fn to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64 - 60;
    let scaled = if shift > 0 {
        q.numer() / (q.denom() << shift as usize)
    } else {
        (q.numer() << (-shift) as usize) / q.denom()
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Points for increasing radii of one spec.
#[derive(Clone, Debug, PartialEq)]
pub struct DensitySeries {
    pub spec: BallSpec,
    pub target_set: TargetSet,
    pub mode: Mode,
    pub points: Vec<DensityPoint>,
}

impl DensitySeries {
    pub fn exact(spec: BallSpec, set: TargetSet, radii: &[u64], opts: &EnumOptions) -> Result<Self> {
        check_increasing(radii)?;
        let points = radii
            .iter()
            .map(|&r| exact_density(&spec.with_radius(r)?, set, opts))
            .collect::<Result<_>>()?;
        Ok(Self {
            spec,
            target_set: set,
            mode: Mode::Exact,
            points,
        })
    }

    pub fn monte_carlo(spec: BallSpec, set: TargetSet, radii: &[u64], samples: u64, seed: u64) -> Result<Self> {
        check_increasing(radii)?;
        let points = radii
            .iter()
            .map(|&r| mc_density(&spec.with_radius(r)?, set, samples, seed))
            .collect::<Result<_>>()?;
        Ok(Self {
            spec,
            target_set: set,
            mode: Mode::MonteCarlo,
            points,
        })
    }

    /// Smallest ratio over the points (a finite-grid stand-in for the lower density).
    pub fn lower(&self) -> Option<BigRational> {
        self.points.iter().map(DensityPoint::ratio).min()
    }

    /// Largest ratio over the points (a finite-grid stand-in for the upper density).
    pub fn upper(&self) -> Option<BigRational> {
        self.points.iter().map(DensityPoint::ratio).max()
    }
}

pub(crate) fn check_increasing(radii: &[u64]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::OutOfRange("at least one radius is required".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutOfRange("radii must be strictly increasing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_names_round_trip() {
        for set in [
            TargetSet::SatZ,
            TargetSet::SatQ,
            TargetSet::FullRank,
            TargetSet::Unimodular,
            TargetSet::RankEq(2),
        ] {
            assert_eq!(set.to_string().parse::<TargetSet>().unwrap(), set);
        }
        assert_eq!("SAT_Z".parse::<TargetSet>().unwrap(), TargetSet::SatZ);
        assert!("sat".parse::<TargetSet>().is_err());
    }

    #[test]
    fn ball_sizes() {
        let spec = BallSpec::new(1, 2, 1, 1).unwrap();
        assert_eq!(spec.coefficient_count(), BigUint::from(9u32));
        assert_eq!(spec.total(), BigUint::from(27u32));
        assert!(BallSpec::new(0, 1, 1, 1).is_err());
    }

    #[test]
    fn float_rendering_of_huge_rationals() {
        let big: BigInt = BigInt::from(3) << 2000;
        let q = BigRational::new(big.clone(), big * 4);
        assert_eq!(to_f64(&q), 0.25);
        let q = BigRational::new(BigInt::from(1) << 1100, (BigInt::from(1) << 1100) * 3);
        assert!((to_f64(&q) - 1.0 / 3.0).abs() < 1e-15);
    }
}
