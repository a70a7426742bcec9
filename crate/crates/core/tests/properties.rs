use std::f64::consts::{LN_2, PI};

use num_bigint::BigUint;
use proptest::prelude::*;

use spartition::bhatt_audit::bhatt_bound;
use spartition::counting::{
    brute_force_count, count_binary_partitions_table, count_s_partitions_table, cumulative_p,
};
use spartition::pennington::{
    alpha_partial, c_constant, eq4_series, integrate_dyadic, remainder_r, sawtooth_f,
    theorem1_ln_ps,
};
use spartition::special_fn::{gamma_complex, integrate_adaptive, zeta_complex, Complex};

#[test]
fn dp_matches_brute_force_to_300() {
    let table = count_s_partitions_table(300).unwrap();
    for n in 0..=300 {
        assert_eq!(table.get(n).unwrap(), &brute_force_count(n).unwrap(), "n = {n}");
    }
}

#[test]
fn counts_are_monotone() {
    let table = count_s_partitions_table(20_000).unwrap();
    assert!(table.counts().windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn cumulative_difference_is_the_count() {
    let table = count_s_partitions_table(501).unwrap();
    for u in 1..=500u64 {
        let step = table.cumulative(u + 1).unwrap() - table.cumulative(u).unwrap();
        assert_eq!(&step, table.get(u).unwrap());
    }
    assert_eq!(cumulative_p(501).unwrap(), table.cumulative(501).unwrap());
}

#[test]
fn binary_partition_recurrence() {
    let b = count_binary_partitions_table(500).unwrap();
    let b = b.counts();
    for n in 1..=500usize {
        let expect = if n % 2 == 0 {
            &b[n - 1] + &b[n / 2]
        } else {
            b[n - 1].clone()
        };
        assert_eq!(b[n], expect, "n = {n}");
    }
}

#[test]
fn remainder_reconstructs_the_part_counter() {
    for u in 1..=10_000u64 {
        let floor_log2 = f64::from(63 - (u + 1).leading_zeros());
        let rebuilt = (u as f64).ln() / LN_2 - 0.5 + remainder_r(u as f64).unwrap();
        assert!((floor_log2 - rebuilt).abs() <= 1e-10, "u = {u}");
    }
}

#[test]
fn per_octave_cancellation() {
    for k in 0..=10 {
        let lo = f64::from(k).exp2();
        let v = integrate_dyadic(|v| sawtooth_f(v).unwrap() / v, lo, 2.0 * lo, 1e-14).unwrap();
        assert!(v.abs() <= 1e-12, "k = {k}: {v:e}");
    }
}

#[test]
fn last_integral_vanishes() {
    let mut previous = f64::INFINITY;
    for u in [10.0, 100.0, 1000.0] {
        let v = integrate_dyadic(|v| sawtooth_f(v).unwrap() / (v - 1.0), u, u + 1.0, 1e-13)
            .unwrap()
            .abs();
        assert!(v <= 1.0 / (2.0 * (u - 1.0)));
        assert!(v < previous);
        previous = v;
    }
}

/// `int_1^u R(v)/v dv` split into its two pieces, with breakpoints where
/// `f(v + 1)` jumps (`v = 2^k - 1`).
fn split_at_mersenne(lo: f64, hi: f64) -> Vec<f64> {
    let mut points = vec![lo];
    let mut p = 3.0;
    while p < hi {
        if p > lo {
            points.push(p);
        }
        p = 2.0 * p + 1.0;
    }
    points.push(hi);
    points
}

fn integrate_points(g: impl Fn(f64) -> f64, points: &[f64], tol: f64) -> f64 {
    spartition::special_fn::integrate_piecewise(g, points, tol, 21 * 20_000)
        .unwrap()
        .value
}

#[test]
fn remainder_integral_decomposes() {
    for u in [10.0, 100.0] {
        let pts = split_at_mersenne(1.0, u);
        let whole = integrate_points(|v| remainder_r(v).unwrap() / v, &pts, 1e-12);
        let log_part = integrate_points(|v| (1.0 / v).ln_1p() / LN_2 / v, &pts, 1e-12);
        let saw_part = integrate_points(|v| sawtooth_f(v + 1.0).unwrap() / v, &pts, 1e-12);
        assert!((whole - log_part - saw_part).abs() <= 1e-10, "u = {u}");
    }
}

#[test]
fn constant_c_from_the_remainder_integral() {
    // int_1^u R(v)/v dv - V(log2 u) -> c, with V the periodic part whose
    // series is eq4_series - ln2/12. Residual o(1) terms are O(1/u).
    let u = f64::from(1u32 << 20);
    let pts = split_at_mersenne(1.0, u);
    let integral = integrate_points(|v| remainder_r(v).unwrap() / v, &pts, 1e-12);
    let periodic = eq4_series(u, 10_000).unwrap() - LN_2 / 12.0;
    let c = c_constant(1e-10).unwrap();
    assert!((integral - periodic - c).abs() < 1e-5, "{}", integral - periodic - c);
}

#[test]
fn alpha_partial_sums_settle() {
    let coarse = alpha_partial(20, 1e-13).unwrap();
    let fine = alpha_partial(40, 1e-13).unwrap();
    assert!((coarse.value - fine.value).abs() < 1e-6);
}

#[test]
fn theorem1_increases_along_grid() {
    let grid = [2u64, 5, 10, 50, 100, 1_000, 10_000, 100_000, 1_000_000, 1_000_000_000];
    let totals: Vec<f64> = grid.iter().map(|&n| theorem1_ln_ps(n, 1e-10).unwrap().total).collect();
    assert!(totals.windows(2).all(|w| w[1] > w[0]), "{totals:?}");
}

#[test]
fn theorem1_error_shrinks_and_meets_loose_bound_at_2_pow_16() {
    let table = count_s_partitions_table(65_536).unwrap();
    let exact = spartition::ln_count(table.get(65_536).unwrap());
    let estimate = theorem1_ln_ps(65_536, 1e-10).unwrap().total;
    assert!((estimate - exact).abs() < 1.0);
}

#[test]
fn bhatt_bound_nondecreasing() {
    let mut prev = bhatt_bound(16).unwrap();
    for n in 17..=20_000 {
        let b = bhatt_bound(n).unwrap();
        assert!(b >= prev, "n = {n}");
        prev = b;
    }
}

#[test]
fn gamma_modulus_on_imaginary_axis() {
    for t in [1.0, 5.0, 2.0 * PI / LN_2, 20.0] {
        let g = gamma_complex(Complex::new(0.0, t)).unwrap().norm();
        let closed = (PI / (t * (PI * t).sinh())).sqrt();
        assert!((g - closed).abs() <= 1e-10 * g, "t = {t}");
    }
}

/// Integrand, lower limit, upper limit, exact value.
type Case = (Box<dyn Fn(f64) -> f64>, f64, f64, f64);

#[test]
fn quadrature_error_estimates_are_honest() {
    let catalogue: Vec<Case> = vec![
        (Box::new(|t| t), 0.0, 1.0, 0.5),
        (Box::new(|t: f64| t.exp()), 0.0, 1.0, 1f64.exp() - 1.0),
        (Box::new(|t: f64| t.sqrt()), 0.0, 1.0, 2.0 / 3.0),
        (Box::new(|t: f64| (t.ln_1p() / t).max(0.0)), 1e-300, 1.0, PI * PI / 12.0),
        (Box::new(|t: f64| 1.0 / (1.0 + t * t)), 0.0, f64::INFINITY, PI / 2.0),
        (Box::new(|t: f64| (-t * t).exp()), 0.0, f64::INFINITY, PI.sqrt() / 2.0),
    ];
    for (i, (f, a, b, truth)) in catalogue.into_iter().enumerate() {
        let r = integrate_adaptive(f, a, b, 1e-10).unwrap();
        assert!((r.value - truth).abs() <= 1e-10, "case {i}");
        assert!((r.value - truth).abs() <= r.error_estimate, "case {i}: estimate not honest");
    }
}

proptest! {
    #[test]
    fn gamma_conjugate_symmetry(re in -20.0f64..20.0, im in -150.0f64..150.0) {
        prop_assume!(im.abs() > 1e-3 || re > 0.0);
        let z = Complex::new(re, im);
        let g = gamma_complex(z).unwrap();
        let gc = gamma_complex(z.conj()).unwrap();
        let scale = g.norm().max(1e-300);
        prop_assert!((gc.re - g.re).abs() <= 1e-13 * scale);
        prop_assert!((gc.im + g.im).abs() <= 1e-13 * scale);
    }

    #[test]
    fn zeta_conjugate_symmetry(re in 0.6f64..6.0, im in -500.0f64..500.0) {
        prop_assume!((re - 1.0).abs() > 1e-3 || im.abs() > 1e-3);
        let s = Complex::new(re, im);
        let z = zeta_complex(s).unwrap();
        let zc = zeta_complex(s.conj()).unwrap();
        prop_assert!((zc.re - z.re).abs() <= 1e-13);
        prop_assert!((zc.im + z.im).abs() <= 1e-13);
    }

    #[test]
    fn sawtooth_range(x in 1.0f64..1e12) {
        let f = sawtooth_f(x).unwrap();
        prop_assert!(f > -0.5 && f <= 0.5);
    }

    #[test]
    fn greedy_partition_of_big_numbers(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        let n = BigUint::from_bytes_le(&bytes);
        let p = spartition::greedy_decompose(&n);
        prop_assert!(p.sums_to_n());
        prop_assert!(p.has_greedy_shape());
    }
}
