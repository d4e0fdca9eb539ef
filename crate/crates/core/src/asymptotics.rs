//! Closed-form high- and low-temperature limits of the thermal Casimir force
//! and free energy, and the constants entering the Drude TM low-temperature
//! expansion.

use crate::numkit::{
    integrate_semi_inf, try_integrate_oscillatory, NumError, OscOptions, QuadResult, QuadSpec, Weight,
};
use crate::specfun::{zeta, zeta_log_series, SpecFunError};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Numerical(#[from] NumError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("{what} did not converge (value {value:e}, error estimate {err:e})")]
    NotConverged { what: &'static str, value: f64, err: f64 },
}

/// Regularization parameters ε of ∫cos(x)x^{3/2}e^{−εx}dx, extrapolated to 0.
pub const REGULARIZATION_EPS: [f64; 4] = [0.1, 0.03, 0.01, 0.003];

/// Parameters of the low-temperature formulas; s0 = α_P²/g = Lσ₀/c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticInput {
    pub tau: f64,
    pub alpha_p: f64,
    pub g: f64,
}

impl AsymptoticInput {
    pub fn s0(&self) -> f64 {
        self.alpha_p * self.alpha_p / self.g
    }
}

/// (120/π³)·Φ(0)·τ.
pub fn high_t_eta(phi0: f64, tau: f64) -> f64 {
    120.0 / PI.powi(3) * phi0 * tau
}

/// (8/3)·τ⁴.
pub fn low_t_plasma_te(tau: f64) -> f64 {
    8.0 / 3.0 * tau.powi(4)
}

/// (240/π³)·ζ(3)·τ³/α_P.
pub fn low_t_plasma_tm(tau: f64, alpha_p: f64) -> f64 {
    240.0 / PI.powi(3) * zeta(3.0).expect("zeta(3)") * tau.powi(3) / alpha_p
}

/// −(15/π⁴)(π/2)^{1/2}ζ(5/2)·s0^{3/2}·τ^{5/2}.
pub fn low_t_drude_te(tau: f64, s0: f64) -> f64 {
    -15.0 / PI.powi(4) * (PI / 2.0).sqrt() * zeta(2.5).expect("zeta(5/2)") * s0.powf(1.5) * tau.powf(2.5)
}

/// (90/π⁴)(2π)^{1/2}ζ(5/2)·s0^{−1/2}·τ^{5/2}·[ln(α_P/τ) + C].
pub fn low_t_drude_tm(tau: f64, s0: f64, alpha_p: f64, c_const: f64) -> f64 {
    90.0 / PI.powi(4) * (2.0 * PI).sqrt() * zeta(2.5).expect("zeta(5/2)") / s0.sqrt()
        * tau.powf(2.5)
        * ((alpha_p / tau).ln() + c_const)
}

/// −(15/π²)(2 ln 2 − 1)·s0·τ² − (45/2π⁴)(2π)^{1/2}ζ(5/2)·s0^{3/2}·τ^{5/2}.
pub fn low_t_free_energy_drude_te(tau: f64, s0: f64) -> f64 {
    let quadratic = -15.0 / (PI * PI) * (2.0 * 2f64.ln() - 1.0) * s0 * tau * tau;
    let half = -45.0 / (2.0 * PI.powi(4)) * (2.0 * PI).sqrt() * zeta(2.5).expect("zeta(5/2)") * s0.powf(1.5) * tau.powf(2.5);
    quadratic + half
}

/// ∫₀^∞ u² r²/(1 − r²) du with r = (√(u²+1) − u)/(√(u²+1) + u), written as
/// ∫₀^∞ u/(4s(s+u)²) du, s = √(u²+1).
pub fn appendix_i_te() -> Result<QuadResult, AsymptoticsError> {
    let spec = QuadSpec::new(1e-13, 0.0, 200_000)?;
    let r = integrate_semi_inf(|u| appendix_i_te_integrand(u), &spec)?;
    if !r.converged {
        return Err(AsymptoticsError::NotConverged {
            what: "TE moment integral",
            value: r.value,
            err: r.err_estimate,
        });
    }
    Ok(r)
}

pub fn appendix_i_te_integrand(u: f64) -> f64 {
    let s = (u * u + 1.0).sqrt();
    u / (4.0 * s * (s + u) * (s + u))
}

/// ∫₀^∞ cos(x)·env(x)·e^{−εx} dx.
fn damped_cosine<F>(env: F, eps: f64) -> Result<QuadResult, AsymptoticsError>
where
    F: Fn(f64) -> f64,
{
    let spec = QuadSpec::new(1e-12, 0.0, 20_000_000)?;
    let opts = OscOptions {
        breaks: Vec::new(),
        decay_length: None,
        scale: Some(1.0 / eps),
    };
    let r = try_integrate_oscillatory(
        |x| Ok::<f64, AsymptoticsError>(env(x) * (-eps * x).exp()),
        1.0,
        Weight::Cos,
        &opts,
        &spec,
    )?;
    if !r.converged {
        return Err(AsymptoticsError::NotConverged {
            what: "regularized cosine integral",
            value: r.value,
            err: r.err_estimate,
        });
    }
    Ok(r)
}

/// Value at 0 of the polynomial through (xs, ys), with the difference to the
/// next-lower degree through the points closest to 0 as error estimate.
fn neville_at_zero(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len();
    let mut p = ys.to_vec();
    let mut lower = p[n - 1];
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
        if m == n - 2 {
            lower = p[1];
        }
    }
    (p[0], (p[0] - lower).abs())
}

/// ε-regularized ∫₀^∞ cos(x)·env(x) dx extrapolated to ε = 0.
pub fn regularized_cosine_integral<F>(env: F) -> Result<QuadResult, AsymptoticsError>
where
    F: Fn(f64) -> f64,
{
    let mut ys = Vec::with_capacity(REGULARIZATION_EPS.len());
    let mut quad_err = 0.0;
    let mut evals = 0;
    for &eps in &REGULARIZATION_EPS {
        let r = damped_cosine(&env, eps)?;
        ys.push(r.value);
        quad_err += r.err_estimate;
        evals += r.evals;
    }
    let (value, err) = neville_at_zero(&REGULARIZATION_EPS, &ys);
    Ok(QuadResult {
        value,
        err_estimate: err + quad_err,
        evals,
        converged: true,
    })
}

/// Regularized values ∫₀^∞ cos(x)x^{3/2}e^{−εx} dx for each ε in
/// [`REGULARIZATION_EPS`].
pub fn cos_moment_sequence() -> Result<Vec<f64>, AsymptoticsError> {
    REGULARIZATION_EPS
        .iter()
        .map(|&eps| damped_cosine(|x: f64| x * x.sqrt(), eps).map(|r| r.value))
        .collect()
}

/// ∫₀^∞ cos(x)x^{3/2} dx (Abel-regularized); exact value −(3/8)(2π)^{1/2}.
pub fn appendix_cos_moment() -> Result<QuadResult, AsymptoticsError> {
    regularized_cosine_integral(|x| x * x.sqrt())
}

/// (1/ζ(5/2))·Σ ln n/n^{5/2} + (8/(3(2π)^{1/2}))·∫₀^∞ cos(y)y^{3/2} ln y dy.
pub fn appendix_c_partial() -> Result<QuadResult, AsymptoticsError> {
    let series = zeta_log_series(2.5)? / zeta(2.5)?;
    let integral = regularized_cosine_integral(|y| if y > 0.0 { y * y.sqrt() * y.ln() } else { 0.0 })?;
    let c = 8.0 / (3.0 * (2.0 * PI).sqrt());
    Ok(QuadResult {
        value: series + c * integral.value,
        err_estimate: c * integral.err_estimate,
        ..integral
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_readouts() {
        assert_eq!(low_t_plasma_te(0.0), 0.0);
        assert!((low_t_plasma_te(1.0) - 8.0 / 3.0).abs() < 1e-15);
        assert!((low_t_drude_te(1.0, 1.0) + 0.258903700881).abs() < 1e-11);
        let first = low_t_free_energy_drude_te(1.0, 1.0)
            + 45.0 / (2.0 * PI.powi(4)) * (2.0 * PI).sqrt() * zeta(2.5).unwrap();
        assert!((first + 0.587097028545).abs() < 1e-11, "{first}");
        let h = high_t_eta(zeta(3.0).unwrap() / 2.0, 1.0);
        assert!((h - 2.32609077617501).abs() < 1e-12, "{h}");
        assert!((high_t_eta(0.7, 2.0) - 2.0 * high_t_eta(0.7, 1.0)).abs() < 1e-15);
    }

    #[test]
    fn neville_reproduces_cubic() {
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x - 3.0 * x * x * x;
        let xs = [0.4, 0.3, 0.2, 0.1];
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let (v, _) = neville_at_zero(&xs, &ys);
        assert!((v - 1.0).abs() < 1e-13);
    }

    #[test]
    fn te_integrand_is_regular_at_origin() {
        assert!(appendix_i_te_integrand(1e-8).is_finite());
        assert_eq!(appendix_i_te_integrand(0.0), 0.0);
    }
}
