//! Integer scalars the elimination routines are generic over.
//!
//! Every routine is written against checked arithmetic and returns `None`
//! on overflow. `BigInt` never overflows, so the big-integer instantiation
//! always succeeds; the `i128` instantiation is a fast path that callers
//! retry with `BigInt` when it reports overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
    fn to_bigint(&self) -> BigInt;
    fn from_bigint(v: &BigInt) -> Option<Self>;
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

#[inline]
pub(crate) fn add<T: Scalar>(a: &T, b: &T) -> Option<T> {
    a.checked_add(b)
}

#[inline]
pub(crate) fn sub<T: Scalar>(a: &T, b: &T) -> Option<T> {
    a.checked_sub(b)
}

#[inline]
pub(crate) fn mul<T: Scalar>(a: &T, b: &T) -> Option<T> {
    a.checked_mul(b)
}

/// `a + b * c`
#[inline]
pub(crate) fn mul_add<T: Scalar>(a: &T, b: &T, c: &T) -> Option<T> {
    add(a, &mul(b, c)?)
}

#[inline]
pub(crate) fn neg<T: Scalar>(a: &T) -> Option<T> {
    T::zero().checked_sub(a)
}

/// Floor division; `b` must be nonzero.
pub(crate) fn floor_div<T: Scalar>(a: &T, b: &T) -> Option<T> {
    let q = a.checked_div(b)?;
    let r = sub(a, &mul(&q, b)?)?;
    if !r.is_zero() && (r.is_negative() != b.is_negative()) {
        sub(&q, &T::one())
    } else {
        Some(q)
    }
}

/// Ceiling division; `b` must be nonzero.
pub(crate) fn ceil_div<T: Scalar>(a: &T, b: &T) -> Option<T> {
    neg(&floor_div(&neg(a)?, b)?)
}

/// Extended gcd: `(g, x, y)` with `a*x + b*y = g >= 0`.
///
/// When `b` divides `a` the result is `(|a|, sign(a), 0)`-like and keeps the
/// Bezout coefficients as small as the Euclidean recursion gives.
pub(crate) fn ext_gcd<T: Scalar>(a: &T, b: &T) -> Option<(T, T, T)> {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.checked_div(&r)?;
        let next_r = sub(&old_r, &mul(&q, &r)?)?;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = sub(&old_s, &mul(&q, &s)?)?;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = sub(&old_t, &mul(&q, &t)?)?;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        Some((neg(&old_r)?, neg(&old_s)?, neg(&old_t)?))
    } else {
        Some((old_r, old_s, old_t))
    }
}

/// `sum_{i=0}^{n-1} floor((a*i + b) / m)` for `n >= 0`, `m > 0`.
pub(crate) fn floor_sum<T: Scalar>(n: &T, m: &T, a: &T, b: &T) -> Option<T> {
    let two = T::one() + T::one();
    let (mut n, mut m, mut a, mut b) = (n.clone(), m.clone(), a.clone(), b.clone());
    let mut ans = T::zero();
    if a.is_negative() {
        let a2 = a.mod_floor(&m);
        let tri = mul(&n, &sub(&n, &T::one())?)?.div_floor(&two);
        ans = sub(&ans, &mul(&tri, &sub(&a2, &a)?.div_floor(&m))?)?;
        a = a2;
    }
    if b.is_negative() {
        let b2 = b.mod_floor(&m);
        ans = sub(&ans, &mul(&n, &sub(&b2, &b)?.div_floor(&m))?)?;
        b = b2;
    }
    loop {
        if a >= m {
            let tri = mul(&n, &sub(&n, &T::one())?)?.div_floor(&two);
            ans = add(&ans, &mul(&tri, &a.div_floor(&m))?)?;
            a = a.mod_floor(&m);
        }
        if b >= m {
            ans = add(&ans, &mul(&n, &b.div_floor(&m))?)?;
            b = b.mod_floor(&m);
        }
        let y_max = mul_add(&b, &a, &n)?;
        if y_max < m {
            break;
        }
        n = y_max.div_floor(&m);
        b = y_max.mod_floor(&m);
        std::mem::swap(&mut m, &mut a);
    }
    Some(ans)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil_division_round_correctly() {
        for a in -20i128..=20 {
            for b in [-7i128, -3, -1, 1, 2, 5] {
                let f = floor_div(&a, &b).unwrap();
                let c = ceil_div(&a, &b).unwrap();
                assert_eq!(f, (a as f64 / b as f64).floor() as i128, "{a}/{b}");
                assert_eq!(c, (a as f64 / b as f64).ceil() as i128, "{a}/{b}");
            }
        }
    }

    #[test]
    fn ext_gcd_satisfies_bezout() {
        for a in -15i128..=15 {
            for b in -15i128..=15 {
                let (g, x, y) = ext_gcd(&a, &b).unwrap();
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, a.gcd(&b));
            }
        }
    }

    #[test]
    fn floor_sum_matches_direct_summation() {
        for n in 0i128..12 {
            for m in 1i128..6 {
                for a in -9i128..=9 {
                    for b in -9i128..=9 {
                        let direct: i128 = (0..n).map(|i| Integer::div_floor(&(a * i + b), &m)).sum();
                        assert_eq!(floor_sum(&n, &m, &a, &b).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn checked_ops_report_overflow() {
        assert!(mul(&i128::MAX, &2).is_none());
        let big = BigInt::from(i128::MAX);
        assert!(mul(&big, &BigInt::from(2)).is_some());
    }
}
