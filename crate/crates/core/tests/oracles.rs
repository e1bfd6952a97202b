mod common;

use common::*;
use latdensity::density::{
    exact_density, gcd_sum_f, gcd_sum_vs_density_report, mc_density, rank_histogram, BallSpec, EnumOptions,
    Enumeration, TargetSet,
};
use latdensity::lattice::{count_points, ehrhart_interpolate, Sublattice};
use latdensity::linalg::{determinant, maximal_minor_gcd, rank};
use latdensity::solve::{
    check_certificate, solvable_over_q, solvable_over_z, solvable_over_z_smith, verify_witness, LinearSystem, Witness,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
const ZETA_3: f64 = 1.202_056_903_159_594_2;

fn random_entries(rng: &mut ChaCha8Rng, len: usize, r: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-r..=r)).collect()
}

#[test]
fn minors_agree_with_normal_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let a = random_entries(&mut rng, n * k, 6);
        let m = int_matrix(n, k, &a);
        let expected_rank = rank_by_minors(&a, n, k);
        assert_eq!(rank(&m), expected_rank, "{m}");
        if n == k {
            let full: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| a[i * n + j] as i128).collect()).collect();
            assert_eq!(determinant(&m), BigInt::from(det(&full)));
        }
        if expected_rank == n {
            assert_eq!(
                maximal_minor_gcd(&m).unwrap(),
                BigInt::from(greatest_divisor(&a, n, k)),
                "{m}"
            );
            let lattice = Sublattice::from_generators(&m);
            assert_eq!(lattice.det().cloned(), Some(BigInt::from(greatest_divisor(&a, n, k))));
        }
    }
}

#[test]
fn solver_matches_minor_criteria() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..600 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let a = random_entries(&mut rng, n * k, 4);
        let b = random_entries(&mut rng, n, 6);
        let sys = LinearSystem::new(int_matrix(n, k, &a), int_matrix(n, 1, &b)).unwrap();
        let data = MinorData::new(&a, n, k);

        let z = solvable_over_z(&sys);
        assert_eq!(z.solvable, data.integral(&a, &b), "{:?}", sys);
        match (&z.witness, &z.certificate) {
            (Some(Witness::Integer(x)), None) => assert!(verify_witness(&sys, x).unwrap()),
            (None, Some(v)) => assert!(check_certificate(&sys, v)),
            other => panic!("inconsistent outcome {other:?}"),
        }
        assert_eq!(solvable_over_q(&sys).solvable, data.rational(&a, &b));
        if data.rank == n {
            assert_eq!(solvable_over_z_smith(&sys).unwrap(), z.solvable);
        }
        if n == k && data.rank == n {
            assert_eq!(solvable_by_inverse(&a, n, &b), Some(z.solvable));
        }
    }
}

#[test]
fn lattice_counts_match_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(n..=n + 1);
        let a = random_entries(&mut rng, n * k, 5);
        if rank_by_minors(&a, n, k) != n {
            continue;
        }
        let lattice = Sublattice::from_generators(&int_matrix(n, k, &a));
        let t_max = if n == 3 { 4 } else { 9 };
        for t in 0..=t_max {
            assert_eq!(
                count_points(&lattice, t),
                BigUint::from(brute_lattice_count(&a, n, k, t)),
                "{a:?} t={t}"
            );
        }
        checked += 1;
    }
}

#[test]
fn quasipolynomial_of_two_z_times_z() {
    // |2Z ∩ [-t,t]| = 2 floor(t/2) + 1, times 2t + 1.
    let lattice = Sublattice::from_generators(&int_matrix(2, 2, &[2, 0, 0, 1]));
    let q = ehrhart_interpolate(&lattice).unwrap();
    assert_eq!(q.period(), 2);
    for t in 0..40u64 {
        let expected = (2 * (t / 2) + 1) * (2 * t + 1);
        assert_eq!(q.evaluate(t), BigRational::from_integer(BigInt::from(expected)));
    }
}

#[test]
fn exact_density_matches_system_loop() {
    for &(m, k, n, r) in &[
        (1, 2, 1, 3),
        (2, 1, 1, 4),
        (1, 1, 2, 2),
        (1, 2, 2, 1),
        (2, 2, 1, 2),
        (1, 3, 1, 2),
    ] {
        for (set, ring) in [(TargetSet::SatZ, Ring::Z), (TargetSet::SatQ, Ring::Q)] {
            let spec = BallSpec::new(m, k, n, r).unwrap();
            for enumeration in [Enumeration::Orbits, Enumeration::Full] {
                let opts = EnumOptions {
                    enumeration,
                    ..EnumOptions::default()
                };
                let got = exact_density(&spec, set, &opts).unwrap().ratio();
                assert_eq!(got, direct_density(m, k, n, r, ring), "{spec:?} {set}");
            }
        }
    }
}

#[test]
fn small_densities_by_hand() {
    // m=k=n=1, r=1: (a, b) in {-1,0,1}^2; unsolvable only a=0, b=±1.
    let spec = BallSpec::new(1, 1, 1, 1).unwrap();
    let p = exact_density(&spec, TargetSet::SatZ, &EnumOptions::default()).unwrap();
    assert_eq!(p.ratio(), BigRational::new(7.into(), 9.into()));
}

#[test]
fn rank_histogram_counts_by_minors() {
    for &(n, k, r) in &[(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2)] {
        let hist = rank_histogram(n, k, r, &EnumOptions::default()).unwrap();
        let mut expected = vec![0u64; n.min(k) + 1];
        for a in cube(n * k, r as i64) {
            expected[rank_by_minors(&a, n, k)] += 1;
        }
        let expected: Vec<BigUint> = expected.into_iter().map(BigUint::from).collect();
        assert_eq!(hist, expected, "n={n} k={k} r={r}");
    }
}

#[test]
fn gcd_sums_by_brute_force() {
    for &(n, r) in &[(2u64, 1u64), (2, 2), (2, 3)] {
        let n = n as usize;
        let f = gcd_sum_f(1, n, n, r, &EnumOptions::default()).unwrap();
        assert_eq!(f.value, brute_gcd_sum_square(n, r), "n={n} r={r}");
    }
    // Rectangular: sum over rank-1 rows (a, b) != 0 of gcd(a, b)^-2.
    let r = 3i64;
    let mut expected = BigRational::from_integer(0.into());
    for v in cube(2, r) {
        let g = greatest_divisor(&v, 1, 2);
        if g != 0 {
            expected += BigRational::new(1.into(), BigInt::from(g * g));
        }
    }
    assert_eq!(
        gcd_sum_f(2, 2, 1, r as u64, &EnumOptions::default()).unwrap().value,
        expected
    );
}

#[test]
fn linkage_rows_are_consistent() {
    let rows = gcd_sum_vs_density_report(1, 2, 1, &[2, 4], &EnumOptions::default()).unwrap();
    for row in rows {
        let direct = direct_density(1, 2, 1, row.r, Ring::Z);
        assert_eq!(row.density, direct);
        assert!(row.density_full_rank <= row.density);
        assert_eq!(row.gap, (&row.density_full_rank - &row.normalized_f).abs());
    }
}

#[test]
fn monte_carlo_tracks_exact_value() {
    let spec = BallSpec::new(1, 2, 1, 6).unwrap();
    let exact = exact_density(&spec, TargetSet::SatZ, &EnumOptions::default())
        .unwrap()
        .ratio_f64();
    let mc = mc_density(&spec, TargetSet::SatZ, 200_000, 5).unwrap();
    let ci = mc.ci.unwrap();
    assert!(ci.contains(exact), "{exact} not in {ci:?}");
}

#[test]
fn zeta_literals() {
    use latdensity::closed_forms::zeta;
    let z2 = zeta(2, 1e-12).unwrap();
    assert!((z2.value - ZETA_2).abs() <= z2.error_bound + 1e-15);
    let z3 = zeta(3, 1e-12).unwrap();
    assert!((z3.value - ZETA_3).abs() <= z3.error_bound + 1e-15);
    let z4 = zeta(4, 1e-12).unwrap();
    assert!((z4.value - ZETA_2 * ZETA_2 * 0.4).abs() <= z4.error_bound + 1e-15);
    assert!((ZETA_3 / ZETA_2 - z3.value / z2.value).abs() < 1e-10);
}
