use casthermo::brownian::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn s(theta: f64, cutoff: Cutoff) -> f64 {
    entropy(&BrownianParams::new(theta, cutoff, 1.0).unwrap()).unwrap()
}

#[test]
fn zero_temperature_entropy() {
    assert!((entropy_zero_t(std::f64::consts::E.powi(2)).unwrap() - 1.0).abs() < 1e-15);
    assert!(entropy_zero_t(0.0).is_err());
}

#[test]
fn ohmic_limits() {
    let low = entropy_ohmic(1e4).unwrap();
    assert!((low - PI / 3e4).abs() < 1e-3 * PI / 3e4);
    // high-temperature deviation from ½(ln(1/θ) + 1) shrinks as θ → 0
    let dev = |th: f64| (entropy_ohmic(th).unwrap() - 0.5 * ((1.0 / th).ln() + 1.0)).abs();
    assert!(dev(1e-3) < 0.2 * dev(1e-2));
    assert!(dev(1e-4) < 0.2 * dev(1e-3));
}

#[test]
fn specific_heat_limits() {
    let c = |th: f64| specific_heat(&BrownianParams::new(th, Cutoff::Infinite, 1.0).unwrap()).unwrap();
    assert!((c(1e-4) - 0.5).abs() < 1e-3);
    assert!((c(1e3) - PI / 3e3).abs() < 1e-2 * PI / 3e3);
}

#[test]
fn negative_entropy_only_below_unit_cutoff() {
    let thetas: Vec<f64> = (0..=60).map(|k| 10f64.powf(-2.0 + k as f64 / 10.0)).collect();
    for (w, expect) in [(0.5, true), (0.9, true), (2.0, false), (10.0, false)] {
        let min = thetas.iter().map(|&th| s(th, Cutoff::Finite(w))).fold(f64::INFINITY, f64::min);
        assert_eq!(min < 0.0, expect, "w = {w}: min {min}");
        assert_eq!(negative_entropy_possible(Cutoff::Finite(w)), expect);
    }
    assert!(!negative_entropy_possible(Cutoff::Infinite));
}

#[test]
fn minima_deepen_with_smaller_cutoff() {
    let thetas: Vec<f64> = (0..=80).map(|k| 10f64.powf(-1.0 + k as f64 / 16.0)).collect();
    let min = |w: f64| thetas.iter().map(|&th| s(th, Cutoff::Finite(w))).fold(f64::INFINITY, f64::min);
    let m = [min(0.5), min(0.1), min(0.01)];
    assert!(m[0] > m[1] && m[1] > m[2], "{m:?}");
}

#[test]
fn infinite_cutoff_rejected_where_finite_needed() {
    let p = BrownianParams::new(1.0, Cutoff::Infinite, 1.0).unwrap();
    assert!(entropy_cutoff(&p).is_err());
    assert!(BrownianParams::new(0.0, Cutoff::Infinite, 1.0).is_err());
    assert!(BrownianParams::new(1.0, Cutoff::Finite(-1.0), 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vieta(w in 1e-3f64..1e4) {
        let r = CutoffRoots::new(w).unwrap();
        let sum = r.lambda_plus + r.lambda_minus;
        let prod = r.lambda_plus * r.lambda_minus;
        prop_assert!((sum.re - w).abs() < 1e-12 * w && sum.im.abs() < 1e-12 * w);
        prop_assert!((prod.re - w).abs() < 1e-10 * w && prod.im.abs() < 1e-10 * w);
        prop_assert_eq!(r.is_complex(), w < 4.0);
    }

    #[test]
    fn closed_form_matches_product(theta in 0.05f64..50.0, w in 0.05f64..100.0) {
        let closed = damping_log_closed(theta, w).unwrap();
        let prod = damping_log_product(theta, w).unwrap();
        prop_assert!((closed - prod.value).abs() < 1e-8 * (1.0 + closed.abs()), "{} vs {:?}", closed, prod);
    }

    #[test]
    fn cutoff_entropy_matches_free_energy_derivative(theta in 0.05f64..50.0, w in 0.05f64..100.0) {
        let p = BrownianParams::new(theta, Cutoff::Finite(w), 1.0).unwrap();
        prop_assert!(entropy_cutoff(&p).is_ok());
    }

    #[test]
    fn large_cutoff_approaches_ohmic(theta in 0.1f64..10.0) {
        let a = entropy_cutoff_closed(theta, 1e7).unwrap();
        let b = entropy_ohmic(theta).unwrap();
        prop_assert!((a - b).abs() < 1e-4);
    }

    #[test]
    fn entropy_ordered_in_cutoff(theta in 0.5f64..100.0, w in 0.01f64..10.0) {
        prop_assert!(s(theta, Cutoff::Finite(w)) < s(theta, Cutoff::Finite(2.0 * w)));
        prop_assert!(s(theta, Cutoff::Finite(w)) < s(theta, Cutoff::Infinite));
    }

    #[test]
    fn ohmic_entropy_positive_and_decreasing(theta in 1e-3f64..1e3) {
        let a = entropy_ohmic(theta).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!(entropy_ohmic(theta * 1.1).unwrap() < a);
    }
}

#[test]
fn million_term_product_at_unit_parameters() {
    // w = 1, θ = 1: Σ_{n<N} −ln(1 + e/(n(n + a))) with the remainder −e/N + O(N⁻²)
    let k = 1.0 / (2.0 * PI);
    let (e, a) = (k * k, k);
    let n_max = 1_000_000u64;
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for n in 1..n_max {
        let n = n as f64;
        let y = -(e / (n * (n + a))).ln_1p() - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    let nf = n_max as f64;
    let tail = -e / (nf - 0.5) + e * a / (2.0 * nf * nf);
    let closed = damping_log_closed(1.0, 1.0).unwrap();
    assert!((sum + tail - closed).abs() < 1e-12, "{} vs {closed}", sum + tail);
    let p = BrownianParams::new(1.0, Cutoff::Finite(1.0), 1.0).unwrap();
    assert!((log_z_reduced(&p).unwrap() - closed).abs() < 1e-14);
}
