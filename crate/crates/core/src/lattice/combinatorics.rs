//! Stirling numbers of the first kind and binomial polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Polynomial with exact rational coefficients, lowest degree first.
pub type RationalPoly = Vec<BigRational>;

/// Signed Stirling numbers of the first kind: `x(x-1)...(x-n+1) = sum_k s(n,k) x^k`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Table for `0 <= k <= n <= n_max` via `s(n+1,k) = s(n,k-1) - n s(n,k)`.
    pub fn new(n_max: usize) -> Self {
        let mut rows = vec![vec![BigInt::one()]];
        for n in 0..n_max {
            let prev = &rows[n];
            let next: Vec<BigInt> = (0..=n + 1)
                .map(|k| {
                    let shifted = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                    let scaled = prev.get(k).map_or_else(BigInt::zero, |v| v * BigInt::from(n));
                    shifted - scaled
                })
                .collect();
            rows.push(next);
        }
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&BigInt> {
        if k > n || n > self.n_max() {
            return Err(Error::OutOfRange(format!(
                "s({n},{k}) needs 0 <= k <= n <= {}",
                self.n_max()
            )));
        }
        Ok(&self.rows[n][k])
    }
}

/// Signed Stirling number of the first kind `s(n, k)`.
pub fn stirling_first(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::OutOfRange(format!("s({n},{k}) needs k <= n")));
    }
    StirlingTable::new(n).get(n, k).cloned()
}

/// `t -> binom(t + shift, d)` in the monomial basis.
pub fn binomial_poly(d: usize, shift: i64) -> RationalPoly {
    let mut poly: RationalPoly = vec![BigRational::one()];
    let mut factorial = BigInt::one();
    for i in 0..d {
        // multiply by (t + shift - i)
        let c = BigRational::from_integer(BigInt::from(shift - i as i64));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (e, coef) in poly.iter().enumerate() {
            next[e + 1] += coef;
            next[e] += coef * &c;
        }
        poly = next;
        factorial *= BigInt::from(i + 1);
    }
    let f = BigRational::from_integer(factorial);
    poly.iter().map(|c| c / &f).collect()
}

pub fn eval_poly(poly: &[BigRational], t: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first(3, 2).unwrap(), BigInt::from(-3));
        assert_eq!(stirling_first(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(stirling_first(4, 2).unwrap(), BigInt::from(11));
        for n in 0..10 {
            assert_eq!(stirling_first(n, n).unwrap(), BigInt::one());
        }
        assert!(matches!(stirling_first(2, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn stirling_rows_expand_falling_factorial() {
        let table = StirlingTable::new(9);
        for n in 0..=9usize {
            for x in -4i64..=6 {
                let falling: BigInt = (0..n as i64).map(|i| BigInt::from(x - i)).product();
                let series: BigInt = (0..=n)
                    .map(|k| table.get(n, k).unwrap() * BigInt::from(x).pow(k as u32))
                    .sum();
                assert_eq!(falling, series, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn binomial_poly_examples() {
        assert_eq!(binomial_poly(1, 1), vec![q(1, 1), q(1, 1)]);
        assert_eq!(binomial_poly(2, 2), vec![q(1, 1), q(3, 2), q(1, 2)]);
        assert_eq!(binomial_poly(2, 0), vec![q(0, 1), q(-1, 2), q(1, 2)]);
        assert_eq!(binomial_poly(0, 5), vec![q(1, 1)]);
    }

    #[test]
    fn binomial_poly_evaluates_binomials() {
        for d in 0..6usize {
            for shift in -2i64..4 {
                let p = binomial_poly(d, shift);
                for t in 0i64..8 {
                    let top = t + shift;
                    let expected: BigRational = if top < d as i64 && top >= 0 {
                        BigRational::zero()
                    } else {
                        let num: BigInt = (0..d as i64).map(|i| BigInt::from(top - i)).product();
                        let den: BigInt = (1..=d as i64).map(BigInt::from).product();
                        BigRational::new(num, den)
                    };
                    assert_eq!(eval_poly(&p, &BigRational::from_integer(t.into())), expected);
                }
            }
        }
    }
}
