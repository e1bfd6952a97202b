//! Seeded Monte Carlo estimates with Wilson score intervals.
//!
//! Samples are drawn in fixed-size blocks; block `b` uses its own ChaCha
//! stream `b` under the run seed, so every sample depends only on
//! `(seed, index)` and the estimate is independent of scheduling.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::exact::matrix_member;
use super::{BallSpec, DensityPoint, Interval, TargetSet};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::solve::{is_solvable_over_q, is_solvable_over_z};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959963984540054;

/// Minimum number of samples per estimate.
pub const MIN_SAMPLES: u64 = 100;

const BLOCK: u64 = 4096;

/// Wilson score interval for `hits` successes out of `n` trials.
pub fn wilson_interval(hits: u64, n: u64, z: f64) -> Interval {
    if n == 0 {
        return Interval { low: 0.0, high: 1.0 };
    }
    let nf = n as f64;
    let p = hits as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    // The bounds are exactly 0 and 1 at the extremes; avoid rounding residue.
    Interval {
        low: if hits == 0 { 0.0 } else { (centre - half).max(0.0) },
        high: if hits == n { 1.0 } else { (centre + half).min(1.0) },
    }
}

fn draw(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: i128) -> Matrix<i128> {
    let data = (0..rows * cols).map(|_| rng.gen_range(-r..=r)).collect();
    Matrix::new(rows, cols, data).expect("shape matches data")
}

fn sample_hit(rng: &mut ChaCha8Rng, spec: &BallSpec, set: TargetSet) -> bool {
    let r = spec.r as i128;
    let a = draw(rng, spec.n, spec.k, r);
    match set {
        TargetSet::SatZ | TargetSet::SatQ => {
            let b = draw(rng, spec.n, spec.m, r);
            let decide = if set == TargetSet::SatZ {
                is_solvable_over_z::<i128>
            } else {
                is_solvable_over_q::<i128>
            };
            decide(&a, &b).unwrap_or_else(|| {
                let (a, b) = (a.to_big(), b.to_big());
                if set == TargetSet::SatZ {
                    is_solvable_over_z(&a, &b)
                } else {
                    is_solvable_over_q(&a, &b)
                }
                .expect("bigint")
            })
        }
        _ => matrix_member(&a, set, spec.n),
    }
}

/// Estimates `rho_r(set)` from `samples` uniform draws of the ball.
pub fn mc_density(spec: &BallSpec, set: TargetSet, samples: u64, seed: u64) -> Result<DensityPoint> {
    if samples < MIN_SAMPLES {
        return Err(Error::OutOfRange(format!(
            "at least {MIN_SAMPLES} samples are required"
        )));
    }
    let blocks = samples.div_ceil(BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = BLOCK.min(samples - b * BLOCK);
            (0..len).filter(|_| sample_hit(&mut rng, spec, set)).count() as u64
        })
        .sum();
    Ok(DensityPoint {
        r: spec.r,
        numerator: BigUint::from(hits),
        denominator: BigUint::from(samples),
        full_rank_numerator: None,
        ci: Some(wilson_interval(hits, samples, Z_95)),
        samples: Some(samples),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_examples() {
        let ci = wilson_interval(50, 100, Z_95);
        assert!((ci.low - 0.4038).abs() < 1e-4 && (ci.high - 0.5962).abs() < 1e-4);
        let ci = wilson_interval(0, 100, Z_95);
        assert_eq!(ci.low, 0.0);
        assert!((ci.high - 0.03699).abs() < 1e-4);
        let ci = wilson_interval(100, 100, Z_95);
        assert_eq!(ci.high, 1.0);
    }

    #[test]
    fn seeded_runs_repeat() {
        let spec = BallSpec::new(1, 2, 1, 1_000).unwrap();
        let a = mc_density(&spec, TargetSet::Unimodular, 5_000, 7).unwrap();
        let b = mc_density(&spec, TargetSet::Unimodular, 5_000, 7).unwrap();
        assert_eq!(a, b);
        let c = mc_density(&spec, TargetSet::Unimodular, 5_000, 8).unwrap();
        assert_ne!(a.numerator, c.numerator);
    }

    #[test]
    fn too_few_samples() {
        let spec = BallSpec::new(1, 1, 1, 1).unwrap();
        assert!(mc_density(&spec, TargetSet::SatZ, 10, 0).is_err());
    }
}
