use std::io::Write;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use super::input::{parse_inline, parse_matrix, parse_system};
use super::record::Table;
use crate::closed_forms::{
    equation_sat_density, qm_density_law, system_density_bounds, unimodular_density, zeta, ClosedForm,
};
use crate::density::{
    conjecture_probe, det_histogram, exact_density, gcd_sum_f, gcd_sum_vs_density_report, mc_density, rank_histogram,
    to_f64, BallSpec, DensityPoint, EnumOptions, TargetSet,
};
use crate::error::{Error, Result};
use crate::lattice::{coefficient_bound_check, count_points, ehrhart_interpolate, h_vector, Sublattice};
use crate::linalg::IntMatrix;
use crate::solve::{
    check_certificate, solvable_over_q, solvable_over_z, solvable_over_z_smith, verify_rational_witness,
    verify_witness, LinearSystem, Ring, Witness,
};

/// What a command hands back to the envelope.
pub struct Output {
    pub params: Map<String, Value>,
    pub seed: Option<u64>,
    pub summary: Option<Value>,
    pub table: Table,
}

impl Output {
    fn new(params: Value, table: Table) -> Self {
        let Value::Object(params) = params else {
            unreachable!("parameters are an object")
        };
        Self {
            params,
            seed: None,
            summary: None,
            table,
        }
    }
}

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn big(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn biguint(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

/// Rounds for display; the exact values travel in the rational columns.
fn rounded(x: f64) -> Value {
    let r = (x * 1e9).round() / 1e9;
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

fn opt_rounded(x: Option<f64>) -> Value {
    x.map_or(Value::Null, rounded)
}

fn progress(err: &mut dyn Write, msg: std::fmt::Arguments<'_>) {
    let _ = writeln!(err, "[latdensity] {msg}");
}

// ---------------------------------------------------------------------------

pub fn solve(ring: Ring, file: Option<&Path>, a: Option<&str>, b: Option<&str>) -> Result<Output> {
    let (a, b) = match (file, a, b) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
            parse_system(&text)?
        }
        (None, Some(a), Some(b)) => (parse_inline(a)?, parse_inline(b)?),
        _ => return Err(Error::Domain("give either --file or both --a and --b".into())),
    };
    let sys = LinearSystem::new(a.clone(), b.clone())?;
    let over_z = solvable_over_z(&sys);
    let over_q = solvable_over_q(&sys);
    let smith = match solvable_over_z_smith(&sys) {
        Ok(v) => Some(v),
        Err(Error::NotFullRank { .. }) => None,
        Err(e) => return Err(e),
    };
    let outcome = match ring {
        Ring::Integers => &over_z,
        Ring::Rationals => &over_q,
    };
    let witness_ok = match &outcome.witness {
        Some(Witness::Integer(x)) => Some(verify_witness(&sys, x)?),
        Some(Witness::Rational(x)) => Some(verify_rational_witness(&sys, x)?),
        None => None,
    };
    let certificate_ok = over_z.certificate.as_ref().map(|v| check_certificate(&sys, v));
    let verdict = |b: bool| if b { "solvable" } else { "unsolvable" };
    let agreement = smith.is_none_or(|s| s == over_z.solvable) && (!over_z.solvable || over_q.solvable);
    let certificate = match ring {
        Ring::Integers => over_z.certificate.as_ref().map(|v| {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        }),
        Ring::Rationals => None,
    };
    let mut table = Table::new(vec![
        "ring",
        "solvable",
        "witness",
        "witness_verified",
        "certificate",
        "certificate_verified",
        "criterion_hnf",
        "criterion_smith",
        "criterion_rank",
        "agreement",
    ]);
    table.push(vec![
        json!(ring.to_string()),
        json!(outcome.solvable),
        outcome.witness.as_ref().map_or(Value::Null, |w| json!(w.to_string())),
        witness_ok.map_or(Value::Null, Value::from),
        certificate.map_or(Value::Null, Value::from),
        match ring {
            Ring::Integers => certificate_ok.map_or(Value::Null, Value::from),
            Ring::Rationals => Value::Null,
        },
        json!(verdict(over_z.solvable)),
        json!(smith.map_or("n/a", verdict)),
        json!(verdict(over_q.solvable)),
        json!(agreement),
    ]);
    Ok(Output::new(
        json!({"ring": ring.to_string(), "a": a.to_string(), "b": b.to_string()}),
        table,
    ))
}

// ---------------------------------------------------------------------------

/// Closed-form limit (or bounds) attached to a density series.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Target {
    pub value: Option<f64>,
    pub low: Option<f64>,
    pub high: Option<f64>,
}

pub fn density_target(m: usize, k: usize, n: usize, set: TargetSet) -> Target {
    let value = |cf: Result<ClosedForm>| Target {
        value: cf.ok().and_then(|c| c.value).map(|v| v.mid()),
        ..Target::default()
    };
    let indicator = |b: bool| Target {
        value: Some(if b { 1.0 } else { 0.0 }),
        ..Target::default()
    };
    match set {
        TargetSet::SatQ => value(qm_density_law(m, k, n)),
        TargetSet::SatZ if n > k => indicator(false),
        TargetSet::SatZ if n == 1 => value(equation_sat_density(m, k)),
        TargetSet::SatZ => match system_density_bounds(m, k, n) {
            Ok(b) => Target {
                value: None,
                low: b.lower.map(|v| v.mid()),
                high: b.upper.map(|v| v.mid()),
            },
            Err(_) => Target::default(),
        },
        TargetSet::FullRank => indicator(n <= k),
        TargetSet::RankEq(s) => indicator(s == n.min(k)),
        TargetSet::Unimodular if n > k => indicator(false),
        TargetSet::Unimodular => value(unimodular_density(n, k)),
    }
}

pub struct DensityArgs {
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub set: TargetSet,
    pub radii: Vec<u64>,
    pub monte_carlo: bool,
    pub samples: u64,
    pub seed: u64,
}

pub fn density(args: &DensityArgs, opts: &EnumOptions, err: &mut dyn Write) -> Result<Output> {
    BallSpec::new(args.m, args.k, args.n, 0)?;
    if args.radii.windows(2).any(|w| w[0] >= w[1]) || args.radii.is_empty() {
        return Err(Error::OutOfRange(
            "radii must be nonempty and strictly increasing".into(),
        ));
    }
    let target = density_target(args.m, args.k, args.n, args.set);
    let mut table = Table::new(vec![
        "r",
        "numerator",
        "denominator",
        "ratio",
        "ratio_f64",
        "full_rank_ratio_f64",
        "ci_low",
        "ci_high",
        "samples",
        "target",
        "target_low",
        "target_high",
    ]);
    for (i, &r) in args.radii.iter().enumerate() {
        progress(
            err,
            format_args!("density {} r={r} ({}/{})", args.set, i + 1, args.radii.len()),
        );
        let spec = BallSpec::new(args.m, args.k, args.n, r)?;
        let p: DensityPoint = if args.monte_carlo {
            mc_density(&spec, args.set, args.samples, args.seed)?
        } else {
            exact_density(&spec, args.set, opts)?
        };
        table.push(vec![
            json!(r),
            biguint(&p.numerator),
            biguint(&p.denominator),
            rational(&p.ratio()),
            rounded(p.ratio_f64()),
            opt_rounded(p.full_rank_ratio().map(|q| to_f64(&q))),
            opt_rounded(p.ci.map(|c| c.low)),
            opt_rounded(p.ci.map(|c| c.high)),
            p.samples.map_or(Value::Null, Value::from),
            opt_rounded(target.value),
            opt_rounded(target.low),
            opt_rounded(target.high),
        ]);
    }
    let mode = if args.monte_carlo { "monte_carlo" } else { "exact" };
    let mut params = json!({
        "m": args.m, "k": args.k, "n": args.n,
        "set": args.set.to_string(), "radii": args.radii, "mode": mode,
    });
    if args.monte_carlo {
        params["samples"] = json!(args.samples);
    }
    let mut out = Output::new(params, table);
    out.seed = args.monte_carlo.then_some(args.seed);
    Ok(out)
}

// ---------------------------------------------------------------------------

pub fn ehrhart(file: Option<&Path>, inline: Option<&str>, t_max: u64) -> Result<Output> {
    let a: IntMatrix = match (file, inline) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
            parse_matrix(&text)?
        }
        (None, Some(text)) => parse_inline(text)?,
        _ => return Err(Error::Domain("give exactly one of --file or --inline".into())),
    };
    let lattice = Sublattice::from_generators(&a);
    let q = ehrhart_interpolate(&lattice)?;
    let index = lattice.det().expect("full rank").clone();
    let n = lattice.ambient_dim();
    let expected = BigRational::new(BigInt::one() << n, index.clone());
    let p = index.to_usize().expect("index within the sampling limit");
    let mut summary = json!({
        "index": big(&index),
        "period": q.period(),
        "degree": q.degree(),
        "rows": q.rows().iter().map(|r| crate::lattice::quasi::format_poly(r)).collect::<Vec<_>>(),
        "coefficients": q.rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "leading_coefficient": q.leading_coefficient().to_string(),
        "expected_leading": expected.to_string(),
        "leading_ok": q.leading_is_constant() && *q.leading_coefficient() == expected,
        "coefficient_bound": coefficient_bound_check(&q),
    });
    match h_vector(&q, p) {
        Ok(h) => {
            summary["h_vector_period"] = json!(h.period);
            summary["h_vector"] = Value::Array(h.values.iter().map(big).collect());
            summary["h_vector_nonnegative"] = json!(h.all_nonnegative());
        }
        Err(e) => summary["h_vector_error"] = json!(e.to_string()),
    }
    let mut table = Table::new(vec!["t", "residue", "quasi_value", "direct_count", "match"]);
    for t in 0..=t_max {
        let predicted = q.evaluate(t);
        let direct = BigRational::from_integer(BigInt::from(count_points(&lattice, t)));
        table.push(vec![
            json!(t),
            json!(t % q.period() as u64),
            rational(&predicted),
            rational(&direct),
            json!(predicted == direct),
        ]);
    }
    let mut out = Output::new(json!({"a": a.to_string(), "t_max": t_max}), table);
    out.summary = Some(summary);
    Ok(out)
}

// ---------------------------------------------------------------------------

pub fn gcdsum(m: usize, k: usize, n: usize, radii: &[u64], opts: &EnumOptions, err: &mut dyn Write) -> Result<Output> {
    let mut table = Table::new(vec![
        "m",
        "k",
        "n",
        "r",
        "value",
        "value_f64",
        "normalized",
        "normalized_f64",
    ]);
    for &r in radii {
        progress(err, format_args!("gcdsum r={r}"));
        let res = gcd_sum_f(m, k, n, r, opts)?;
        table.push(vec![
            json!(m),
            json!(k),
            json!(n),
            json!(r),
            rational(&res.value),
            rounded(to_f64(&res.value)),
            rational(&res.normalized),
            rounded(to_f64(&res.normalized)),
        ]);
    }
    Ok(Output::new(json!({"m": m, "k": k, "n": n, "radii": radii}), table))
}

pub fn conjecture(n: usize, radii: &[u64], opts: &EnumOptions, err: &mut dyn Write) -> Result<Output> {
    progress(err, format_args!("conjecture n={n} over {} radii", radii.len()));
    let report = conjecture_probe(n, radii, opts)?;
    let mut table = Table::new(vec!["r", "f", "f_f64", "normalizer", "ratio"]);
    for row in &report.rows {
        table.push(vec![
            json!(row.r),
            rational(&row.f),
            rounded(to_f64(&row.f)),
            rounded(row.normalizer),
            opt_rounded(row.ratio),
        ]);
    }
    let mut out = Output::new(json!({"n": n, "radii": radii}), table);
    out.summary = Some(json!({
        "min_ratio": opt_rounded(report.min_ratio),
        "max_ratio": opt_rounded(report.max_ratio),
    }));
    Ok(out)
}

pub fn linkage(m: usize, k: usize, n: usize, radii: &[u64], opts: &EnumOptions, err: &mut dyn Write) -> Result<Output> {
    progress(err, format_args!("linkage over {} radii", radii.len()));
    let rows = gcd_sum_vs_density_report(m, k, n, radii, opts)?;
    let mut table = Table::new(vec!["r", "density", "density_full_rank", "normalized_f", "gap"]);
    for row in &rows {
        table.push(vec![
            json!(row.r),
            rounded(to_f64(&row.density)),
            rounded(to_f64(&row.density_full_rank)),
            rounded(to_f64(&row.normalized_f)),
            rounded(to_f64(&row.gap)),
        ]);
    }
    let target = density_target(m, k, n, TargetSet::SatZ);
    let mut out = Output::new(json!({"m": m, "k": k, "n": n, "radii": radii}), table);
    out.summary = Some(json!({
        "gap_shrinks": rows.last().map(|l| l.gap < rows[0].gap),
        "target": opt_rounded(target.value),
    }));
    Ok(out)
}

pub fn rank_hist(n: usize, k: usize, radii: &[u64], opts: &EnumOptions, err: &mut dyn Write) -> Result<Output> {
    let mut table = Table::new(vec!["r", "rank", "count", "fraction"]);
    for &r in radii {
        progress(err, format_args!("rank histogram r={r}"));
        let counts = rank_histogram(n, k, r, opts)?;
        let total: BigUint = counts.iter().sum();
        for (s, c) in counts.iter().enumerate() {
            let frac = BigRational::new(BigInt::from(c.clone()), BigInt::from(total.clone()));
            table.push(vec![json!(r), json!(s), biguint(c), rounded(to_f64(&frac))]);
        }
    }
    Ok(Output::new(json!({"n": n, "k": k, "radii": radii}), table))
}

pub fn det_hist(n: usize, r: u64, opts: &EnumOptions) -> Result<Output> {
    let hist = det_histogram(n, r, opts)?;
    let mut table = Table::new(vec!["det", "count"]);
    for (d, c) in &hist {
        table.push(vec![big(d), biguint(c)]);
    }
    Ok(Output::new(json!({"n": n, "r": r}), table))
}

// ---------------------------------------------------------------------------

pub fn bounds(m: usize, k: usize, n: usize) -> Result<Output> {
    let mut forms = vec![equation_sat_density(m, k)?, qm_density_law(m, k, n)?];
    if n <= k {
        forms.insert(0, unimodular_density(n, k)?);
    }
    if n > 1 {
        forms.push(system_density_bounds(m, k, n)?);
    }
    let mut table = Table::new(vec!["kind", "m", "k", "n", "value", "lower", "upper", "error", "note"]);
    for cf in &forms {
        let error = [cf.value, cf.lower, cf.upper]
            .iter()
            .flatten()
            .map(|e| e.radius())
            .fold(0.0, f64::max);
        table.push(vec![
            serde_json::to_value(cf.kind).expect("serializable"),
            cf.m.map_or(Value::Null, Value::from),
            json!(cf.k),
            cf.n.map_or(Value::Null, Value::from),
            opt_rounded(cf.value.map(|v| v.mid())),
            opt_rounded(cf.lower.map(|v| v.mid())),
            opt_rounded(cf.upper.map(|v| v.mid())),
            json!(error),
            cf.note.clone().map_or(Value::Null, Value::from),
        ]);
    }
    Ok(Output::new(json!({"m": m, "k": k, "n": n}), table))
}

pub fn zeta_cmd(s: u32, tol: f64) -> Result<Output> {
    let z = zeta(s, tol)?;
    let mut table = Table::new(vec!["s", "value", "error_bound"]);
    table.push(vec![json!(s), json!(z.value), json!(z.error_bound)]);
    Ok(Output::new(json!({"s": s, "tol": tol}), table))
}
