//! Ehrhart quasipolynomials of `t -> |L ∩ [-t, t]^n|` for full-rank `L`.
//!
//! In lattice coordinates the cube becomes a rational polytope whose vertex
//! denominators divide `d(L)`, so the count is a degree-`n` quasipolynomial
//! whose period divides `d(L)`. Each residue class is recovered by exact
//! interpolation from `n + 1` sampled counts and checked on two more.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::combinatorics::{binomial_poly, eval_poly, RationalPoly, StirlingTable};
use super::count::count_points;
use super::Sublattice;
use crate::error::{Error, Result};

/// Largest sampling period accepted by [`ehrhart_interpolate`].
pub const MAX_PERIOD: usize = 1 << 20;

/// `L(t) = f_{t mod p}(t)` with one coefficient row per residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    degree: usize,
    rows: Vec<RationalPoly>,
}

impl QuasiPolynomial {
    /// Builds from residue rows, each holding `degree + 1` coefficients,
    /// lowest degree first.
    pub fn from_rows(degree: usize, rows: Vec<RationalPoly>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::OutOfRange(
                "a quasipolynomial needs at least one residue row".into(),
            ));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != degree + 1) {
            return Err(Error::ShapeMismatch(format!(
                "residue row {bad} has {} coefficients, expected {}",
                rows[bad].len(),
                degree + 1
            )));
        }
        Ok(Self { degree, rows })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn period(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RationalPoly] {
        &self.rows
    }

    /// Coefficient `c_i` of residue row `j`.
    pub fn coefficient(&self, j: usize, i: usize) -> &BigRational {
        &self.rows[j][i]
    }

    /// `c_d` of residue 0.
    pub fn leading_coefficient(&self) -> &BigRational {
        &self.rows[0][self.degree]
    }

    pub fn leading_is_constant(&self) -> bool {
        self.rows.iter().all(|r| r[self.degree] == *self.leading_coefficient())
    }

    pub fn evaluate(&self, t: u64) -> BigRational {
        let row = &self.rows[(t % self.period() as u64) as usize];
        eval_poly(row, &BigRational::from_integer(BigInt::from(t)))
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, row) in self.rows.iter().enumerate() {
            if j > 0 {
                writeln!(f)?;
            }
            write!(f, "f_{j}(t) = {}", format_poly(row))?;
        }
        Ok(())
    }
}

/// Human-readable polynomial in `t`, highest degree first.
pub fn format_poly(poly: &[BigRational]) -> String {
    let mut terms = Vec::new();
    for (e, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coef = if mag.is_one() && e > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        let var = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        terms.push((sign, format!("{coef}{var}")));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (sign, body)) in terms.iter().enumerate() {
        match (i, *sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            (_, s) => {
                out.push(' ');
                out.push_str(s);
                out.push(' ');
            }
        }
        out.push_str(body);
    }
    out
}

/// Solves the Vandermonde system `sum_i c_i t_k^i = y_k` exactly.
fn interpolate(ts: &[u64], ys: &[BigRational]) -> RationalPoly {
    let n = ts.len();
    let mut m: Vec<Vec<BigRational>> = ts
        .iter()
        .zip(ys)
        .map(|(&t, y)| {
            let t = BigRational::from_integer(BigInt::from(t));
            let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
            let mut pw = BigRational::one();
            for _ in 0..n {
                row.push(pw.clone());
                pw *= &t;
            }
            row.push(y.clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !m[i][c].is_zero())
            .expect("distinct nodes give a regular system");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let delta = &f * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

/// Reconstructs the Ehrhart quasipolynomial of the cube counts of `lattice`.
pub fn ehrhart_interpolate(lattice: &Sublattice) -> Result<QuasiPolynomial> {
    let d = lattice.ambient_dim();
    if !lattice.is_full_rank() {
        return Err(Error::NotFullRank {
            rank: lattice.rank(),
            required: d,
        });
    }
    let det = lattice.det().expect("full rank");
    let p = det
        .to_usize()
        .filter(|&p| p <= MAX_PERIOD)
        .ok_or_else(|| Error::OutOfRange(format!("lattice index {det} exceeds the sampling limit {MAX_PERIOD}")))?;
    let p64 = p as u64;
    let rows: Vec<RationalPoly> = (0..p64)
        .map(|j| {
            let ts: Vec<u64> = (0..=d as u64).map(|i| j + i * p64).collect();
            let ys: Vec<BigRational> = ts.iter().map(|&t| count_rational(lattice, t)).collect();
            let poly = interpolate(&ts, &ys);
            for extra in [d as u64 + 1, d as u64 + 2] {
                let t = j + extra * p64;
                assert_eq!(
                    eval_poly(&poly, &BigRational::from_integer(BigInt::from(t))),
                    count_rational(lattice, t),
                    "residue {j} fails validation at t = {t}"
                );
            }
            poly
        })
        .collect();
    let period = minimal_period(&rows);
    let q = QuasiPolynomial::from_rows(d, rows[..period].to_vec())?;
    debug_assert!(q.leading_is_constant());
    Ok(q)
}

fn count_rational(lattice: &Sublattice, t: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(count_points(lattice, t)))
}

/// Smallest divisor `q` of `rows.len()` with `rows[j] == rows[j mod q]`.
fn minimal_period(rows: &[RationalPoly]) -> usize {
    let p = rows.len();
    (1..=p)
        .filter(|q| p % q == 0)
        .find(|&q| (q..p).all(|j| rows[j] == rows[j % q]))
        .unwrap_or(p)
}

/// Numerator coefficients of the Ehrhart series
/// `sum_t L(t) z^t = (sum_i h_i z^i) / (1 - z^p)^(d+1)`.
///
/// Stored so that `L(p s + j) = sum_{i=0}^{d} h_{ip+j} binom(s + d - i, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub period: usize,
    pub degree: usize,
    pub values: Vec<BigInt>,
}

impl HVector {
    pub fn get(&self, i: usize) -> &BigInt {
        &self.values[i]
    }

    /// `sum_i h_{ip+j}`.
    pub fn residue_sum(&self, j: usize) -> BigInt {
        (0..=self.degree).map(|i| &self.values[i * self.period + j]).sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.values.iter().all(|h| !h.is_negative())
    }
}

/// h-vector of `q` with respect to the period `p` (a multiple of the period
/// of `q`; for nonnegativity use a denominator of the polytope, such as the
/// lattice index).
pub fn h_vector(q: &QuasiPolynomial, p: usize) -> Result<HVector> {
    if p == 0 || p % q.period() != 0 {
        return Err(Error::OutOfRange(format!(
            "h-vector period {p} is not a multiple of the quasipolynomial period {}",
            q.period()
        )));
    }
    let d = q.degree();
    // binom(s + d - l, d) evaluated at s = i, for l <= i.
    let basis: Vec<RationalPoly> = (0..=d).map(|l| binomial_poly(d, d as i64 - l as i64)).collect();
    let mut values = vec![BigInt::zero(); (d + 1) * p];
    for j in 0..p {
        for i in 0..=d {
            let s = BigRational::from_integer(BigInt::from(i));
            let mut rest = q.evaluate((p * i + j) as u64);
            for l in 0..i {
                rest -= BigRational::from_integer(values[l * p + j].clone()) * eval_poly(&basis[l], &s);
            }
            // binom(d, d) = 1 on the diagonal.
            if !rest.is_integer() {
                return Err(Error::NonIntegralH {
                    index: i * p + j,
                    value: rest.to_string(),
                });
            }
            values[i * p + j] = rest.to_integer();
        }
    }
    Ok(HVector {
        period: p,
        degree: d,
        values,
    })
}

/// `|c_r| <= |s(d+1, r+1)| c_d` for every residue row and `1 <= r <= d-1`.
pub fn coefficient_bound_check(q: &QuasiPolynomial) -> bool {
    let d = q.degree();
    let stirling = StirlingTable::new(d + 1);
    let lead = q.leading_coefficient();
    q.rows().iter().all(|row| {
        (1..d).all(|r| {
            let s = BigRational::from_integer(stirling.get(d + 1, r + 1).expect("in table").abs());
            row[r].abs() <= s * lead
        })
    })
}
