//! The sums `F_{m,k,n}(r) = sum gcd(A)^{-m}` and
//! `S_{m,k,n}(r) = sum L_A(r)^m` over full-rank `A` in `B_r^{nk}`, their link
//! to the solvability density, and the growth probe for `F_{1,n,n}`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::enumerate::{enumerate, Tally};
use super::exact::{hermite_small, SatTally, Wide};
use super::{check_increasing, to_f64, BallSpec, EnumOptions};
use crate::error::{Error, Result};
use crate::linalg::{bareiss, Matrix};

/// `F_{m,k,n}(r)` and `F / (2r)^{nk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdSumResult {
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub r: u64,
    pub value: BigRational,
    pub normalized: BigRational,
}

/// Weighted counts of full-rank matrices grouped by greatest divisor.
#[derive(Default)]
pub(crate) struct GcdTally(BTreeMap<u128, Wide>);

impl Tally for GcdTally {
    fn merge(&mut self, other: Self) {
        for (g, w) in other.0 {
            self.0.entry(g).or_default().merge(w);
        }
    }
}

impl GcdTally {
    fn add(&mut self, g: u128, w: u128) {
        self.0.entry(g).or_default().add(w);
    }

    /// `sum_g W_g / g^m`.
    fn sum(&self, m: u32) -> BigRational {
        let powers: Vec<(BigUint, BigUint)> = self
            .0
            .iter()
            .map(|(g, w)| (BigUint::from(*g).pow(m), w.total()))
            .collect();
        let lcm = powers.iter().fold(BigUint::one(), |acc, (p, _)| acc.lcm(p));
        let num: BigUint = powers.iter().map(|(p, w)| w * (&lcm / p)).sum();
        BigRational::new(BigInt::from(num), BigInt::from(lcm))
    }
}

/// Greatest divisor of a rank-`n` matrix, `None` when rank is lower.
pub(crate) fn greatest_divisor(a: &Matrix<i128>) -> Option<u128> {
    let n = a.rows();
    if n == a.cols() {
        let d = if n == 2 {
            a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0)
        } else {
            bareiss::determinant(a)
                .or_else(|| bareiss::determinant(&a.to_big()).and_then(|d| i128::try_from(d).ok()))
                .expect("determinant of a bounded matrix fits i128")
        };
        return (d != 0).then(|| d.unsigned_abs());
    }
    let hf = hermite_small(a);
    (hf.rank == n).then(|| hf.pivot_product().expect("index fits i128") as u128)
}

fn require_n_le_k(n: usize, k: usize) -> Result<()> {
    if n > k {
        return Err(Error::Domain(format!(
            "full-rank sums need n <= k (got n = {n}, k = {k}); no n x k matrix has rank n"
        )));
    }
    Ok(())
}

fn normalizer(spec: &BallSpec) -> BigRational {
    BigRational::from_integer(BigInt::from(2 * spec.r).pow((spec.n * spec.k) as u32))
}

fn gcd_tally(spec: &BallSpec, opts: &EnumOptions) -> Result<GcdTally> {
    enumerate(
        spec.n,
        spec.k,
        spec.r,
        opts.enumeration,
        opts.budget,
        |t: &mut GcdTally, a, w| {
            if let Some(g) = greatest_divisor(a) {
                t.add(g, w);
            }
        },
    )
}

/// `F_{m,k,n}(r)` over full-rank `A` in `B_r^{nk}`.
pub fn gcd_sum_f(m: usize, k: usize, n: usize, r: u64, opts: &EnumOptions) -> Result<GcdSumResult> {
    require_n_le_k(n, k)?;
    let spec = BallSpec::new(m, k, n, r)?;
    let value = gcd_tally(&spec, opts)?.sum(m as u32);
    let normalized = if r == 0 {
        BigRational::zero()
    } else {
        &value / normalizer(&spec)
    };
    Ok(GcdSumResult {
        m,
        k,
        n,
        r,
        value,
        normalized,
    })
}

/// `S_{m,k,n}(r)`: solvable systems whose coefficient matrix has rank `n`.
pub fn structured_sum_s(m: usize, k: usize, n: usize, r: u64, opts: &EnumOptions) -> Result<BigUint> {
    require_n_le_k(n, k)?;
    BallSpec::new(m, k, n, r)?;
    let tally: SatTally = enumerate(n, k, r, opts.enumeration, opts.budget, |t: &mut SatTally, a, w| {
        let hf = hermite_small(a);
        if hf.rank == n {
            t.visit(&hf, n, r, m as u32, w);
        }
    })?;
    Ok(tally.full_rank.total())
}

/// One radius of the gcd-sum/density comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageRow {
    pub r: u64,
    /// `rho_r(SAT_Z)` over all coefficient matrices.
    pub density: BigRational,
    /// `rho_r(SAT_Z)` counting only rank-`n` coefficient matrices.
    pub density_full_rank: BigRational,
    /// `F_{m,k,n}(r) / (2r)^{nk}`.
    pub normalized_f: BigRational,
    /// `|density_full_rank - normalized_f|`.
    pub gap: BigRational,
}

#[derive(Default)]
struct LinkageTally {
    sat: SatTally,
    gcd: GcdTally,
}

impl Tally for LinkageTally {
    fn merge(&mut self, other: Self) {
        self.sat.merge(other.sat);
        self.gcd.merge(other.gcd);
    }
}

/// Exact `rho_r(SAT_Z)` next to `F / (2r)^{nk}` for each radius.
pub fn gcd_sum_vs_density_report(
    m: usize,
    k: usize,
    n: usize,
    radii: &[u64],
    opts: &EnumOptions,
) -> Result<Vec<LinkageRow>> {
    require_n_le_k(n, k)?;
    check_increasing(radii)?;
    if radii[0] == 0 {
        return Err(Error::OutOfRange("radii must be positive".into()));
    }
    radii
        .iter()
        .map(|&r| {
            let spec = BallSpec::new(m, k, n, r)?;
            let t: LinkageTally = enumerate(n, k, r, opts.enumeration, opts.budget, |t: &mut LinkageTally, a, w| {
                let hf = hermite_small(a);
                t.sat.visit(&hf, n, r, m as u32, w);
                if hf.rank == n {
                    t.gcd.add(hf.pivot_product().expect("index fits i128") as u128, w);
                }
            })?;
            let total = BigRational::from_integer(BigInt::from(spec.total()));
            let density = BigRational::from_integer(BigInt::from(t.sat.all.total())) / &total;
            let density_full_rank = BigRational::from_integer(BigInt::from(t.sat.full_rank.total())) / &total;
            let normalized_f = t.gcd.sum(m as u32) / normalizer(&spec);
            let gap = (&density_full_rank - &normalized_f).abs();
            Ok(LinkageRow {
                r,
                density,
                density_full_rank,
                normalized_f,
                gap,
            })
        })
        .collect()
}

/// One radius of the growth probe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub r: u64,
    #[serde(skip)]
    pub f: BigRational,
    /// `r^{n^2-n} ln r`.
    pub normalizer: f64,
    /// `F / normalizer`; absent when the normalizer vanishes (`r = 1`).
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub rows: Vec<ConjectureRow>,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

/// `F_{1,n,n}(r)` against `r^{n^2-n} ln r`. Reports evidence only.
pub fn conjecture_probe(n: usize, radii: &[u64], opts: &EnumOptions) -> Result<ConjectureReport> {
    if n < 2 {
        return Err(Error::Domain(format!("the growth probe needs n >= 2 (got {n})")));
    }
    check_increasing(radii)?;
    if radii[0] == 0 {
        return Err(Error::OutOfRange("radii must be positive".into()));
    }
    let rows = radii
        .iter()
        .map(|&r| {
            let f = gcd_sum_f(1, n, n, r, opts)?.value;
            let normalizer = (r as f64).powi((n * n - n) as i32) * (r as f64).ln();
            let ratio = (normalizer > 0.0).then(|| to_f64(&f) / normalizer);
            Ok(ConjectureRow {
                r,
                f,
                normalizer,
                ratio,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = rows.iter().filter_map(|row| row.ratio).collect();
    Ok(ConjectureReport {
        n,
        min_ratio: ratios.iter().copied().reduce(f64::min),
        max_ratio: ratios.iter().copied().reduce(f64::max),
        rows,
    })
}
