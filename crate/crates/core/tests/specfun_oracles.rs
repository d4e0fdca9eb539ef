use casthermo::specfun::*;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn ln_gamma_factorials() {
    let mut ln_fact = 0.0f64;
    for n in 1..60u32 {
        assert!((ln_gamma(n as f64 + 1.0).unwrap() - ln_fact - (n as f64).ln()).abs() <= 1e-13 * ln_fact.max(1.0));
        ln_fact += (n as f64).ln();
    }
    assert!((ln_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-15);
}

/// Σ n^{-s} to N plus the Euler–Maclaurin tail N^{1-s}/(s-1) − N^{-s}/2 + sN^{-s-1}/12.
fn zeta_direct(s: f64) -> f64 {
    let n = 20_000u32;
    let head: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    let nf = n as f64;
    head + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0
}

#[test]
fn zeta_against_direct_sum() {
    for s in [1.5, 2.0, 2.5, 3.0, 5.0] {
        let z = zeta(s).unwrap();
        assert!((z - zeta_direct(s)).abs() < 1e-12 * z, "{s}");
    }
    assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
}

/// Σ ln n/n^s summed directly with the integral tail ∫_N^∞ ln x x^{-s} dx and
/// the midpoint correction.
fn log_series_direct(s: f64) -> f64 {
    let n = 200_000u32;
    let head: f64 = (2..n).map(|k| (k as f64).ln() * (k as f64).powf(-s)).sum();
    let nf = n as f64;
    let sm1 = s - 1.0;
    let tail = nf.powf(-sm1) * (nf.ln() / sm1 + 1.0 / (sm1 * sm1));
    head + tail + 0.5 * nf.ln() * nf.powf(-s)
}

#[test]
fn zeta_log_series_against_direct_sum() {
    for s in [2.0, 2.5, 4.0] {
        let v = zeta_log_series(s).unwrap();
        assert!((v - log_series_direct(s)).abs() < 1e-10, "{s}: {v}");
    }
    assert!(zeta_log_series(1.0).is_err());
}

#[test]
fn zeta_log_series_is_minus_zeta_derivative() {
    let s = 2.5;
    let h = 1e-4;
    let d = (zeta(s + h).unwrap() - zeta(s - h).unwrap()) / (2.0 * h);
    assert!((zeta_log_series(s).unwrap() + d).abs() < 1e-7);
}

#[test]
fn digamma_known_values() {
    assert!((digamma_real(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
    assert!((digamma_real(0.5).unwrap() + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
    assert!(digamma_real(0.0).is_err());
}

#[test]
fn complex_log_gamma_matches_real() {
    for x in [0.3, 1.0, 2.5, 17.0] {
        let z = ln_gamma_complex(Complex64::new(x, 0.0)).unwrap();
        assert!((z.re - ln_gamma(x).unwrap()).abs() < 1e-13 && z.im.abs() < 1e-15);
    }
}

proptest! {
    #[test]
    fn ln_gamma_recurrence(x in 0.01f64..50.0) {
        let lhs = ln_gamma(x + 1.0).unwrap();
        let rhs = ln_gamma(x).unwrap() + x.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn digamma_is_log_gamma_derivative(x in 0.2f64..30.0) {
        let h = 1e-5 * x;
        let fd = (ln_gamma(x + h).unwrap() - ln_gamma(x - h).unwrap()) / (2.0 * h);
        prop_assert!((digamma_real(x).unwrap() - fd).abs() < 1e-7 * (1.0 + fd.abs()));
    }

    #[test]
    fn complex_digamma_recurrence(re in 0.05f64..20.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let lhs = digamma(z + 1.0).unwrap();
        let rhs = digamma(z).unwrap() + 1.0 / z;
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm().max(1.0));
    }

    #[test]
    fn complex_log_gamma_recurrence(re in 0.05f64..20.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let d = ln_gamma_complex(z + 1.0).unwrap() - ln_gamma_complex(z).unwrap() - z.ln();
        // equal up to a multiple of 2πi
        let k = (d.im / (2.0 * PI)).round();
        prop_assert!(d.re.abs() < 1e-11 * (1.0 + z.norm()));
        prop_assert!((d.im - 2.0 * PI * k).abs() < 1e-10 * (1.0 + z.norm()));
    }

    #[test]
    fn zeta_decreases_to_one(s in 1.1f64..40.0) {
        let z = zeta(s).unwrap();
        prop_assert!(z > 1.0);
        prop_assert!(zeta(s + 0.1).unwrap() < z);
    }
}
