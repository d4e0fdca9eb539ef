use casthermo::numkit::*;
use proptest::prelude::*;

#[test]
fn semi_infinite_gaussian() {
    let r = integrate_semi_inf(|x| (-x * x).exp(), &QuadSpec::default()).unwrap();
    assert!(r.converged);
    assert!((r.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
}

#[test]
fn endpoint_singularity() {
    // ∫₀¹ ln x dx = −1
    let r = integrate(|x| x.ln(), 0.0, 1.0, &QuadSpec::default()).unwrap();
    assert!((r.value + 1.0).abs() < 1e-10, "{r:?}");
}

#[test]
fn alternating_and_power_series() {
    let spec = QuadSpec::default();
    let r = sum_accelerated(0, 0, |n| if n % 2 == 0 { 1.0 } else { -1.0 } / (2 * n + 1) as f64, &spec).unwrap();
    assert!((r.value - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    let r = sum_accelerated(1, 0, |n| 1.0 / (n * n) as f64, &spec).unwrap();
    assert!((r.value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-9);
}

#[test]
fn invalid_spec_rejected() {
    assert!(QuadSpec::new(0.0, 0.0, 100).is_err());
    assert!(QuadSpec::new(-1e-3, 0.0, 100).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cosine_transform_of_exponential(omega in 0.0f64..200.0, a in 0.1f64..5.0) {
        let r = integrate_cosine(|x| (-a * x).exp(), omega, &QuadSpec::default()).unwrap();
        let exact = a / (a * a + omega * omega);
        prop_assert!((r.value - exact).abs() < 1e-9 * exact + 1e-13, "{:?} vs {}", r, exact);
    }

    #[test]
    fn sine_over_x_of_exponential(omega in 0.01f64..500.0) {
        let opts = OscOptions::default();
        let r = integrate_oscillatory(|x| (-x).exp(), omega, Weight::SinOverX, &opts, &QuadSpec::default()).unwrap();
        prop_assert!((r.value - omega.atan()).abs() < 1e-9);
    }

    #[test]
    fn polynomial_integrals(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let r = integrate(|x| a + b * x + c * x * x * x, -1.0, 2.0, &QuadSpec::default()).unwrap();
        let exact = 3.0 * a + 1.5 * b + c * (16.0 - 1.0) / 4.0;
        prop_assert!((r.value - exact).abs() < 1e-12 * (1.0 + exact.abs()));
    }

    #[test]
    fn derivative_of_smooth_functions(x in 0.1f64..10.0) {
        let spec = QuadSpec::new(1e-8, 0.0, 100).unwrap();
        let d = derivative(|t| t.sin() * t.exp(), x, &spec).unwrap();
        let exact = x.exp() * (x.sin() + x.cos());
        prop_assert!((d.value - exact).abs() < 1e-7 * (1.0 + exact.abs()));
    }

    #[test]
    fn smooth_sum_of_lorentzian(s in 1.0f64..300.0) {
        // Σ_{n≥1} 1/(1 + (n/s)²) = (πs coth(πs) − 1)/2
        let r = sum_smooth(
            1,
            16,
            |n| 1.0 / (1.0 + (n as f64 / s).powi(2)),
            |x0, _| Ok(QuadResult::exact(s * (std::f64::consts::FRAC_PI_2 - (x0 / s).atan()))),
            &QuadSpec::new(1e-11, 0.0, 100_000).unwrap(),
        )
        .unwrap();
        let ps = std::f64::consts::PI * s;
        let exact = 0.5 * (ps / ps.tanh() - 1.0);
        prop_assert!((r.value - exact).abs() < 1e-9 * exact);
    }
}
