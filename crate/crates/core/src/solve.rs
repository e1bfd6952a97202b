//! Solvability of `A X = B` over `Z^m` and `Q^m`.
//!
//! A system is solved column by column: `A X = B` is solvable iff every
//! `A x = B_i` is, and a witness is assembled from the per-column solutions.
//! Over `Z` the primary test is membership of each `B_i` in the column
//! lattice `H_A`; the greatest-divisor criterion (for full row rank `A`)
//! and the dual certificate are independent checks on the same answer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::hermite::{hermite_checked, lattice_coordinates};
use crate::linalg::{self, bareiss, IntMatrix, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    a: IntMatrix,
    b: IntMatrix,
}

impl LinearSystem {
    pub fn new(a: IntMatrix, b: IntMatrix) -> Result<Self> {
        if a.rows() != b.rows() {
            return Err(Error::ShapeMismatch(format!(
                "A has {} rows but B has {}",
                a.rows(),
                b.rows()
            )));
        }
        Ok(Self { a, b })
    }

    pub fn coefficients(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &IntMatrix {
        &self.b
    }

    /// Number of equations `n`.
    pub fn equations(&self) -> usize {
        self.a.rows()
    }

    /// Number of unknowns `k`.
    pub fn unknowns(&self) -> usize {
        self.a.cols()
    }

    /// Group rank `m` (columns of `B`).
    pub fn group_rank(&self) -> usize {
        self.b.cols()
    }
}

/// Dense matrix of reduced rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        if !self.data.iter().all(|q| q.is_integer()) {
            return None;
        }
        IntMatrix::new(self.rows, self.cols, self.data.iter().map(|q| q.to_integer()).collect()).ok()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Integer(x) => x.fmt(f),
            Witness::Rational(x) => x.fmt(f),
        }
    }
}

impl From<&IntMatrix> for RationalMatrix {
    fn from(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .entries()
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Integer(IntMatrix),
    Rational(RationalMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solvable: bool,
    pub witness: Option<Witness>,
    /// Row vector `v` with `vA` integral and some `v . B_i` not integral.
    pub certificate: Option<Vec<BigRational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Integers => "Z",
            Ring::Rationals => "Q",
        })
    }
}

// ---------------------------------------------------------------------------
// Over Q

/// Kronecker-Capelli: solvable iff `rank A = rank (A | B_i)` for every `i`.
pub fn solvable_over_q(sys: &LinearSystem) -> SolveOutcome {
    let solvable = is_solvable_over_q_big(&sys.a, &sys.b);
    let witness = solvable.then(|| Witness::Rational(rational_solution(&sys.a, &sys.b)));
    SolveOutcome {
        solvable,
        witness,
        certificate: None,
    }
}

/// Decision-only rank test on any scalar; `None` on overflow.
pub fn is_solvable_over_q<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<bool> {
    let r = bareiss::rank(a)?;
    for i in 0..b.cols() {
        let aug = a.augment(&b.columns(i..i + 1)).expect("row counts agree");
        if bareiss::rank(&aug)? != r {
            return Some(false);
        }
    }
    Some(true)
}

fn is_solvable_over_q_big(a: &IntMatrix, b: &IntMatrix) -> bool {
    if let (Some(sa), Some(sb)) = (a.to_small(), b.to_small()) {
        if let Some(ans) = is_solvable_over_q(&sa, &sb) {
            return ans;
        }
    }
    is_solvable_over_q(a, b).expect("big integer arithmetic cannot overflow")
}

/// Reduced row echelon solve with free variables set to zero. Caller
/// guarantees consistency.
fn rational_solution(a: &IntMatrix, b: &IntMatrix) -> RationalMatrix {
    let (n, k, m) = (a.rows(), a.cols(), b.cols());
    let width = k + m;
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .chain(b.row(i))
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..width {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut x = vec![BigRational::zero(); k * m];
    for (row, &c) in pivots.iter().enumerate() {
        for col in 0..m {
            x[c * m + col] = rows[row][k + col].clone();
        }
    }
    RationalMatrix {
        rows: k,
        cols: m,
        data: x,
    }
}

// ---------------------------------------------------------------------------
// Over Z

/// Greatest-divisor criterion: for `rank A = n`, solvable iff
/// `gcd(A) = gcd(A | B_i)` for every column `B_i`.
pub fn solvable_over_z_smith(sys: &LinearSystem) -> Result<bool> {
    let n = sys.a.rows();
    let rank = linalg::rank(&sys.a);
    if rank < n {
        return Err(Error::NotFullRank { rank, required: n });
    }
    let g = linalg::maximal_minor_gcd(&sys.a)?;
    for i in 0..sys.b.cols() {
        let aug = sys.a.augment(&sys.b.columns(i..i + 1))?;
        if linalg::maximal_minor_gcd(&aug)? != g {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lattice membership test: solvable iff every `B_i` lies in `H_A`.
pub fn solvable_over_z(sys: &LinearSystem) -> SolveOutcome {
    let columns = match (sys.a.to_small(), sys.b.to_small()) {
        (Some(sa), Some(sb)) => integral_columns(&sa, &sb).map(|cols| {
            cols.map(|c| {
                c.into_iter()
                    .map(|v| v.into_iter().map(BigInt::from).collect())
                    .collect()
            })
        }),
        _ => None,
    };
    let columns: Option<Vec<Vec<BigInt>>> = match columns {
        Some(c) => c,
        None => integral_columns(&sys.a, &sys.b).expect("big integer arithmetic cannot overflow"),
    };
    match columns {
        Some(cols) => {
            let (k, m) = (sys.a.cols(), sys.b.cols());
            let mut x = IntMatrix::zeros(k, m);
            for (j, col) in cols.into_iter().enumerate() {
                for (i, v) in col.into_iter().enumerate() {
                    x.set(i, j, v);
                }
            }
            SolveOutcome {
                solvable: true,
                witness: Some(Witness::Integer(x)),
                certificate: None,
            }
        }
        None => SolveOutcome {
            solvable: false,
            witness: None,
            certificate: dual_certificate(sys),
        },
    }
}

/// Per-column integral solutions `x_i = U (c_i, 0)`; outer `None` means
/// overflow, inner `None` means some column is not in `H_A`.
fn integral_columns<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Option<Vec<Vec<T>>>> {
    let hf = hermite_checked(a, true)?;
    let k = a.cols();
    let mut out = Vec::with_capacity(b.cols());
    for i in 0..b.cols() {
        let Some(c) = lattice_coordinates(&hf.basis, &hf.pivot_rows, &b.col(i))? else {
            return Some(None);
        };
        let mut full = c;
        full.resize(k, T::zero());
        out.push(hf.transform.mul_vec(&full)?);
    }
    Some(Some(out))
}

/// Decision-only membership test on any scalar; `None` on overflow.
pub fn is_solvable_over_z<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<bool> {
    let hf = hermite_checked(a, false)?;
    for i in 0..b.cols() {
        if lattice_coordinates(&hf.basis, &hf.pivot_rows, &b.col(i))?.is_none() {
            return Some(false);
        }
    }
    Some(true)
}

/// Dual certificate of unsolvability over `Z`.
///
/// With `U A V = D`, row `i` of `U` scaled by `1/d_i` has integral product
/// with `A`; it certifies unsolvability when `(U B_j)_i` is not divisible by
/// `d_i`. Rows past the rank annihilate `A`, so a nonzero `(U B_j)_i = w`
/// gives the certificate `u_i / (|w| + 1)`. Rows are scanned in ascending
/// order and the first failing one is returned.
pub fn dual_certificate(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    let snf = linalg::smith_normal_form(&sys.a);
    let ub = snf
        .left
        .checked_mul(&sys.b)
        .expect("big integer arithmetic cannot overflow");
    for i in 0..sys.a.rows() {
        let row = snf.left.row(i);
        let scale = match snf.diag.get(i) {
            Some(d) => (0..ub.cols())
                .find(|&j| !ub.get(i, j).is_multiple_of(d))
                .map(|_| d.clone()),
            None => (0..ub.cols())
                .find(|&j| !ub.get(i, j).is_zero())
                .map(|j| ub.get(i, j).abs() + BigInt::one()),
        };
        if let Some(scale) = scale {
            return Some(row.iter().map(|u| BigRational::new(u.clone(), scale.clone())).collect());
        }
    }
    None
}

/// `true` iff `v A` is integral and `v . B_i` is non-integral for some `i`.
pub fn check_certificate(sys: &LinearSystem, v: &[BigRational]) -> bool {
    if v.len() != sys.a.rows() {
        return false;
    }
    let dot = |m: &IntMatrix, j: usize| -> BigRational {
        v.iter()
            .enumerate()
            .map(|(i, vi)| vi * BigRational::from_integer(m.get(i, j).clone()))
            .sum()
    };
    (0..sys.a.cols()).all(|j| dot(&sys.a, j).is_integer()) && (0..sys.b.cols()).any(|j| !dot(&sys.b, j).is_integer())
}

/// `true` iff `A X = B` holds exactly.
pub fn verify_witness(sys: &LinearSystem, x: &IntMatrix) -> Result<bool> {
    if x.rows() != sys.a.cols() || x.cols() != sys.b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "witness is {}x{}, expected {}x{}",
            x.rows(),
            x.cols(),
            sys.a.cols(),
            sys.b.cols()
        )));
    }
    let ax = sys.a.checked_mul(x).expect("big integer arithmetic cannot overflow");
    Ok(&ax == sys.rhs())
}

/// `true` iff `A X = B` holds exactly for a rational `X`.
pub fn verify_rational_witness(sys: &LinearSystem, x: &RationalMatrix) -> Result<bool> {
    if x.rows != sys.a.cols() || x.cols != sys.b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "witness is {}x{}, expected {}x{}",
            x.rows,
            x.cols,
            sys.a.cols(),
            sys.b.cols()
        )));
    }
    for i in 0..sys.a.rows() {
        for j in 0..x.cols {
            let lhs: BigRational = (0..x.rows)
                .map(|l| BigRational::from_integer(sys.a.get(i, l).clone()) * x.get(l, j))
                .sum();
            if lhs != BigRational::from_integer(sys.b.get(i, j).clone()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(a: &[&[i64]], b: &[&[i64]]) -> LinearSystem {
        LinearSystem::new(IntMatrix::from_rows(a).unwrap(), IntMatrix::from_rows(b).unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rows_must_agree() {
        let err = LinearSystem::new(IntMatrix::identity(2), IntMatrix::zeros(3, 1)).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }

    #[test]
    fn rational_examples() {
        let s = sys(&[&[1, 2], &[2, 4]], &[&[1], &[2]]);
        let out = solvable_over_q(&s);
        assert!(out.solvable);
        let Some(Witness::Rational(x)) = &out.witness else {
            panic!()
        };
        assert!(verify_rational_witness(&s, x).unwrap());

        assert!(!solvable_over_q(&sys(&[&[1, 2], &[2, 4]], &[&[1], &[3]])).solvable);

        let s = sys(&[&[1, 0], &[0, 1]], &[&[7, -2], &[3, 5]]);
        let out = solvable_over_q(&s);
        let Some(Witness::Rational(x)) = out.witness else {
            panic!()
        };
        assert_eq!(x.to_integer().unwrap(), s.rhs().clone());

        let out = solvable_over_q(&sys(&[&[2]], &[&[3]]));
        let Some(Witness::Rational(x)) = out.witness else {
            panic!()
        };
        assert_eq!(x.data, vec![q(3, 2)]);
    }

    #[test]
    fn smith_criterion_examples() {
        assert!(solvable_over_z_smith(&sys(&[&[2]], &[&[4]])).unwrap());
        assert!(!solvable_over_z_smith(&sys(&[&[2]], &[&[3]])).unwrap());
        assert!(solvable_over_z_smith(&sys(&[&[2, 3]], &[&[1]])).unwrap());
        let err = solvable_over_z_smith(&sys(&[&[1, 2], &[2, 4]], &[&[1], &[2]])).unwrap_err();
        assert!(matches!(err, Error::NotFullRank { rank: 1, required: 2 }));
    }

    #[test]
    fn integral_examples() {
        let zero = sys(&[&[0, 0], &[0, 0]], &[&[0], &[0]]);
        let out = solvable_over_z(&zero);
        assert!(out.solvable);
        let Some(Witness::Integer(x)) = out.witness else {
            panic!()
        };
        assert!(x.is_zero());

        let s = sys(&[&[2, 0], &[0, 3]], &[&[4], &[9]]);
        let out = solvable_over_z(&s);
        let Some(Witness::Integer(x)) = out.witness else {
            panic!()
        };
        assert_eq!(x, IntMatrix::from_rows(&[[2], [3]]).unwrap());

        let s = sys(&[&[2, 0], &[0, 3]], &[&[1], &[3]]);
        let out = solvable_over_z(&s);
        assert!(!out.solvable);
        assert!(check_certificate(&s, out.certificate.as_ref().unwrap()));

        let s = sys(&[&[2, 3]], &[&[1]]);
        let Some(Witness::Integer(x)) = solvable_over_z(&s).witness else {
            panic!()
        };
        assert!(verify_witness(&s, &x).unwrap());
    }

    #[test]
    fn certificate_examples() {
        let s = sys(&[&[2]], &[&[3]]);
        assert_eq!(dual_certificate(&s), Some(vec![q(1, 2)]));
        assert_eq!(dual_certificate(&sys(&[&[2, 3]], &[&[1]])), None);

        let s = sys(&[&[2, 0], &[0, 1]], &[&[3], &[5]]);
        let v = dual_certificate(&s).unwrap();
        assert!(check_certificate(&s, &v));
        assert_eq!(v, vec![q(1, 2), q(0, 1)]);

        // Zero coefficient matrix: a scaled standard basis row.
        let s = sys(&[&[0], &[0]], &[&[0], &[3]]);
        let v = dual_certificate(&s).unwrap();
        assert_eq!(v, vec![q(0, 1), q(1, 4)]);
        assert!(check_certificate(&s, &v));

        // Rank failure: rows past the rank.
        let s = sys(&[&[1, 2], &[2, 4]], &[&[1], &[3]]);
        assert!(check_certificate(&s, &dual_certificate(&s).unwrap()));
    }

    #[test]
    fn witness_verification() {
        let s = sys(&[&[2]], &[&[4]]);
        assert!(verify_witness(&s, &IntMatrix::from_rows(&[[2]]).unwrap()).unwrap());
        assert!(!verify_witness(&s, &IntMatrix::from_rows(&[[1]]).unwrap()).unwrap());
        let id = sys(&[&[1, 0], &[0, 1]], &[&[5], &[-6]]);
        assert!(verify_witness(&id, id.rhs()).unwrap());
        let err = verify_witness(&s, &IntMatrix::zeros(2, 1)).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }

    #[test]
    fn decision_paths_agree_with_outcomes() {
        let a = Matrix::<i128>::from_rows(&[[2, 4], [6, 3]]).unwrap();
        for b0 in -4..=4i64 {
            for b1 in -4..=4i64 {
                let b = Matrix::<i128>::from_rows(&[[b0], [b1]]).unwrap();
                let s = LinearSystem::new(a.to_big(), b.to_big()).unwrap();
                assert_eq!(is_solvable_over_z(&a, &b), Some(solvable_over_z(&s).solvable));
                assert_eq!(is_solvable_over_q(&a, &b), Some(solvable_over_q(&s).solvable));
            }
        }
    }

    #[test]
    fn huge_entries_use_bigint_path() {
        let big = BigInt::from(i64::MAX) * BigInt::from(3);
        let a = IntMatrix::new(1, 1, vec![big.clone()]).unwrap();
        let b = IntMatrix::new(1, 1, vec![big.clone() * BigInt::from(5)]).unwrap();
        let s = LinearSystem::new(a, b).unwrap();
        let Some(Witness::Integer(x)) = solvable_over_z(&s).witness else {
            panic!()
        };
        assert_eq!(x.get(0, 0), &BigInt::from(5));
    }
}
