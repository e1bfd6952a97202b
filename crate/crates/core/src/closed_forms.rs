//! Limit densities in closed form: zeta values, the unimodular density
//! `1 / prod_{j=k-n+1}^{k} zeta(j)`, the single-equation density
//! `zeta(k+m) / zeta(k)`, the rational 0/1 law and the bounds
//! `rho(U_{n,k}) <= lower rho(SAT) <= upper rho(SAT) <= (zeta(k+m)/zeta(k))^n`.
//!
//! Every value is carried as a rigorous enclosure so comparisons against
//! measured densities can be made with interval arithmetic.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest tolerance [`zeta`] accepts; below it f64 rounding dominates.
pub const MIN_TOLERANCE: f64 = 1e-13;

/// Tolerance of the cached values used by the closed forms.
pub const CACHE_TOLERANCE: f64 = 1e-12;

/// Largest `s` kept in the cache.
pub const MAX_CACHED_S: u32 = 128;

/// Closed real interval with outward-rounded endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn radius(&self) -> f64 {
        if self.lo == self.hi {
            return 0.0;
        }
        (0.5 * (self.hi - self.lo)).next_up()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Product of enclosures of nonnegative numbers.
    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        debug_assert!(self.lo >= 0.0 && other.lo >= 0.0);
        Enclosure::new(
            (self.lo * other.lo).next_down().max(0.0),
            (self.hi * other.hi).next_up(),
        )
    }

    /// Quotient of enclosures of positive numbers.
    pub fn div(&self, other: &Enclosure) -> Enclosure {
        debug_assert!(self.lo >= 0.0 && other.lo > 0.0);
        Enclosure::new(
            (self.lo / other.hi).next_down().max(0.0),
            (self.hi / other.lo).next_up(),
        )
    }

    pub fn recip(&self) -> Enclosure {
        Enclosure::point(1.0).div(self)
    }

    pub fn powi(&self, e: u32) -> Enclosure {
        (0..e).fold(Enclosure::point(1.0), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.9} ± {:.1e}", self.mid(), self.radius())
    }
}

/// `zeta(s)` with a guaranteed error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaValue {
    pub s: u32,
    pub value: f64,
    pub error_bound: f64,
}

impl ZetaValue {
    pub fn enclosure(&self) -> Enclosure {
        Enclosure::new(
            (self.value - self.error_bound).next_down(),
            (self.value + self.error_bound).next_up(),
        )
    }
}

/// `zeta(s) = sum_{n>=1} n^{-s}` from the partial sum `S_N` and the tail
/// bracket `1/((s-1)(N+1)^{s-1}) <= zeta(s) - S_N <= 1/((s-1) N^{s-1})`.
///
/// The bracket has width at most `N^{-s}`, so `N = ceil(tol^{-1/s})` meets
/// the tolerance; the reported value is the bracket midpoint and the bound
/// includes the floating-point error of the summation.
pub fn zeta(s: u32, tol: f64) -> Result<ZetaValue> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta(s) diverges for s = {s}; need s >= 2")));
    }
    if !(tol >= MIN_TOLERANCE) || !tol.is_finite() {
        return Err(Error::OutOfRange(format!(
            "tolerance must lie in [{MIN_TOLERANCE:e}, inf), got {tol}"
        )));
    }
    let n_terms = tol.powf(-1.0 / s as f64).ceil().max(1.0) as u64;
    // Neumaier summation, smallest terms first.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for n in (1..=n_terms).rev() {
        let term = (n as f64).powi(-(s as i32));
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    let partial = sum + comp;
    let sm1 = (s - 1) as f64;
    let tail_hi = 1.0 / (sm1 * (n_terms as f64).powi(s as i32 - 1));
    let tail_lo = 1.0 / (sm1 * ((n_terms + 1) as f64).powi(s as i32 - 1));
    let value = partial + 0.5 * (tail_lo + tail_hi);
    let u = f64::EPSILON / 2.0;
    // Per-term relative error of powi/reciprocal plus summation error.
    let rounding = ((s as f64 + 8.0) * u + 4.0 * n_terms as f64 * u * u) * value;
    let error_bound = 0.5 * (tail_hi - tail_lo) + rounding;
    debug_assert!(error_bound <= tol);
    Ok(ZetaValue { s, value, error_bound })
}

fn cache() -> &'static [ZetaValue] {
    static CACHE: OnceLock<Vec<ZetaValue>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (2..=MAX_CACHED_S)
            .map(|s| zeta(s, CACHE_TOLERANCE).expect("valid"))
            .collect()
    })
}

/// Cached enclosure of `zeta(s)`; computed on demand beyond the cache.
pub fn zeta_enclosure(s: u32) -> Result<Enclosure> {
    if (2..=MAX_CACHED_S).contains(&s) {
        return Ok(cache()[(s - 2) as usize].enclosure());
    }
    if s > MAX_CACHED_S {
        // zeta(s) - 1 < 2^{1-s} (s - 1)/(s - 2) is below f64 resolution here.
        let e = 2f64.powi(1 - s as i32) * 2.0;
        return Ok(Enclosure::new(1.0, (1.0 + e).next_up()));
    }
    zeta(s, CACHE_TOLERANCE).map(|z| z.enclosure())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClosedFormKind {
    Unimodular,
    EquationSat,
    QmLaw,
    SystemBounds,
}

/// A limit density or a pair of bounds on one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedForm {
    pub kind: ClosedFormKind,
    pub m: Option<usize>,
    pub k: usize,
    pub n: Option<usize>,
    pub value: Option<Enclosure>,
    pub lower: Option<Enclosure>,
    pub upper: Option<Enclosure>,
    pub note: Option<String>,
}

impl ClosedForm {
    fn exact(kind: ClosedFormKind, m: Option<usize>, k: usize, n: Option<usize>, v: Enclosure) -> Self {
        Self {
            kind,
            m,
            k,
            n,
            value: Some(v),
            lower: None,
            upper: None,
            note: None,
        }
    }
}

/// Density of unimodular `n x k` matrices.
pub fn unimodular_density(n: usize, k: usize) -> Result<ClosedForm> {
    if n == 0 || n > k {
        return Err(Error::Domain(format!(
            "unimodular density needs 1 <= n <= k (got n = {n}, k = {k})"
        )));
    }
    let v = if n == k {
        Enclosure::point(0.0)
    } else {
        ((k - n + 1)..=k)
            .try_fold(Enclosure::point(1.0), |acc, j| {
                Ok::<_, Error>(acc.mul(&zeta_enclosure(j as u32)?))
            })?
            .recip()
    };
    Ok(ClosedForm::exact(ClosedFormKind::Unimodular, None, k, Some(n), v))
}

/// Density of solvable single equations over `Z^m` in `k` unknowns.
pub fn equation_sat_density(m: usize, k: usize) -> Result<ClosedForm> {
    if m == 0 || k == 0 {
        return Err(Error::Domain(format!(
            "m and k must be positive (got m = {m}, k = {k})"
        )));
    }
    let v = if k == 1 {
        Enclosure::point(0.0)
    } else {
        zeta_enclosure((k + m) as u32)?.div(&zeta_enclosure(k as u32)?)
    };
    Ok(ClosedForm::exact(ClosedFormKind::EquationSat, Some(m), k, None, v))
}

/// Density of systems solvable over `Q^m`: 1 when `n <= k`, else 0.
pub fn qm_density_law(m: usize, k: usize, n: usize) -> Result<ClosedForm> {
    if m == 0 || k == 0 || n == 0 {
        return Err(Error::Domain(format!("m, k, n must be positive (got {m}, {k}, {n})")));
    }
    let mut cf = ClosedForm::exact(
        ClosedFormKind::QmLaw,
        Some(m),
        k,
        Some(n),
        Enclosure::point(if n <= k { 1.0 } else { 0.0 }),
    );
    if n > k {
        cf.note = Some("SAT over Z is contained in SAT over Q, so it is negligible as well".into());
    }
    Ok(cf)
}

/// `(rho(U_{n,k}), (zeta(k+m)/zeta(k))^n)` bounding the density of
/// solvable `n`-equation systems. The lower bound needs `k > n > 1`, the
/// upper bound `k >= n > 1`; a bound outside its range is omitted.
pub fn system_density_bounds(m: usize, k: usize, n: usize) -> Result<ClosedForm> {
    if n <= 1 {
        return Err(Error::Domain(format!("system bounds need n > 1 (got n = {n})")));
    }
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let lower = if k > n { unimodular_density(n, k)?.value } else { None };
    let upper = if k >= n {
        equation_sat_density(m, k)?.value.map(|v| v.powi(n as u32))
    } else {
        None
    };
    Ok(ClosedForm {
        kind: ClosedFormKind::SystemBounds,
        m: Some(m),
        k,
        n: Some(n),
        value: None,
        lower,
        upper,
        note: (k < n).then(|| "no bounds for k < n; the density is 0".to_string()),
    })
}
