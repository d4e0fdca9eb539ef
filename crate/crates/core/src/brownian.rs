//! Thermodynamics of a free Brownian particle with ohmic or Drude-cutoff
//! damping.
//!
//! Frequencies are in units of the damping constant γ: θ = ħβγ, w = ω_c/γ,
//! and the Matsubara frequencies are ξ_n/γ = 2πn/θ. The box length enters only
//! through b = 2πML²γ/ħ, which fixes the zero-temperature entropy S₀ = ½ ln b.
//!
//! With the Drude kernel γ̂(ξ) = γω_c/(ξ + ω_c) the damping factor of the
//! partition function is
//! Π_n ξ_n(ξ_n + ω_c)/((ξ_n + λ₊)(ξ_n + λ₋)) = Γ(1+a₊)Γ(1+a₋)/Γ(1+a_w),
//! a = θλ/2π, where λ± are the roots of λ² − wλ + w = 0.

use crate::numkit::{try_derivative, try_integrate_semi_inf_opts, try_sum_smooth, NumError, QuadResult, QuadSpec, SemiInf};
use crate::specfun::{digamma, digamma_real, ln_gamma, ln_gamma_complex, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BrownianError {
    #[error("{0}")]
    Domain(String),
    #[error("{what}: closed form {closed:e} and independent evaluation {check:e} disagree")]
    Consistency { what: &'static str, closed: f64, check: f64 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Numerical(#[from] NumError),
}

/// Cutoff frequency ratio w = ω_c/γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cutoff {
    Finite(f64),
    /// Strictly ohmic damping.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrownianParams {
    theta: f64,
    cutoff: Cutoff,
    box_const: f64,
}

fn positive(name: &str, x: f64) -> Result<f64, BrownianError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(BrownianError::Domain(format!("{name} must be positive and finite, got {x}")))
    }
}

impl BrownianParams {
    pub fn new(theta: f64, cutoff: Cutoff, box_const: f64) -> Result<Self, BrownianError> {
        positive("theta", theta)?;
        positive("box constant", box_const)?;
        if let Cutoff::Finite(w) = cutoff {
            positive("cutoff ratio", w)?;
        }
        Ok(BrownianParams {
            theta,
            cutoff,
            box_const,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    pub fn box_const(&self) -> f64 {
        self.box_const
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self, BrownianError> {
        BrownianParams::new(theta, self.cutoff, self.box_const)
    }

    fn finite_cutoff(&self) -> Result<f64, BrownianError> {
        match self.cutoff {
            Cutoff::Finite(w) => Ok(w),
            Cutoff::Infinite => Err(BrownianError::Domain(
                "the partition function needs a finite cutoff frequency".into(),
            )),
        }
    }
}

/// λ± = (w ± √(w² − 4w))/2, with λ₋ = w/λ₊. Complex conjugates for w < 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffRoots {
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

impl CutoffRoots {
    pub fn new(w: f64) -> Result<Self, BrownianError> {
        positive("cutoff ratio", w)?;
        let disc = w * w - 4.0 * w;
        let (lp, lm) = if disc >= 0.0 {
            let lp = 0.5 * (w + disc.sqrt());
            (Complex64::new(lp, 0.0), Complex64::new(w / lp, 0.0))
        } else {
            let im = 0.5 * (-disc).sqrt();
            (Complex64::new(0.5 * w, im), Complex64::new(0.5 * w, -im))
        };
        Ok(CutoffRoots {
            lambda_plus: lp,
            lambda_minus: lm,
        })
    }

    pub fn is_complex(&self) -> bool {
        self.lambda_plus.im != 0.0
    }
}

/// ln Γ(1+a₊) + ln Γ(1+a₋) − ln Γ(1+a_w), the log of the damping product.
pub fn damping_log_closed(theta: f64, w: f64) -> Result<f64, BrownianError> {
    positive("theta", theta)?;
    let roots = CutoffRoots::new(w)?;
    let k = theta / (2.0 * PI);
    let one = Complex64::new(1.0, 0.0);
    let lp = ln_gamma_complex(one + roots.lambda_plus * k)?;
    let lm = ln_gamma_complex(one + roots.lambda_minus * k)?;
    Ok(lp.re + lm.re - ln_gamma(1.0 + k * w)?)
}

/// The same logarithm from the product itself: Σ_n −ln(1 + e/(n(n + a_w))),
/// e = a₊a₋ = (θ/2π)²w, with the terms beyond the explicit head replaced by
/// the Euler–Maclaurin integral tail.
pub fn damping_log_product(theta: f64, w: f64) -> Result<QuadResult, BrownianError> {
    positive("theta", theta)?;
    positive("cutoff ratio", w)?;
    let k = theta / (2.0 * PI);
    let aw = k * w;
    let e = k * k * w;
    let h = move |x: f64| -(e / (x * (x + aw))).ln_1p();
    let spec = QuadSpec::new(1e-13, 0.0, 1 << 24)?;
    let breaks = [e.sqrt(), aw];
    let r = try_sum_smooth(
        1,
        4096,
        |n| Ok::<QuadResult, BrownianError>(QuadResult::exact(h(n as f64))),
        |x0, _| {
            let range = SemiInf {
                lower: x0,
                scale: x0.max(aw).max(e.sqrt()),
                breaks: &breaks,
            };
            try_integrate_semi_inf_opts(|x| Ok::<f64, BrownianError>(h(x)), &range, &spec)
        },
        &spec,
    )?;
    Ok(r)
}

/// ln Z = ½ ln(b/θ) + ln Π_n ξ_n/(ξ_n + γ̂(ξ_n)), from the gamma-function form
/// after checking it against the explicit product.
pub fn log_z_reduced(p: &BrownianParams) -> Result<f64, BrownianError> {
    let w = p.finite_cutoff()?;
    let closed = damping_log_closed(p.theta, w)?;
    let product = damping_log_product(p.theta, w)?;
    if (closed - product.value).abs() > 1e-9 * closed.abs() + 1e-12 {
        return Err(BrownianError::Consistency {
            what: "damping product",
            closed,
            check: product.value,
        });
    }
    Ok(0.5 * (p.box_const / p.theta).ln() + closed)
}

/// (S − S₀)/k_B for strictly ohmic damping:
/// ln Γ(1+a) − aψ(a) − ½ ln θ + a − ½, a = θ/2π.
pub fn entropy_ohmic(theta: f64) -> Result<f64, BrownianError> {
    positive("theta", theta)?;
    let a = theta / (2.0 * PI);
    Ok(ln_gamma(1.0 + a)? - a * digamma_real(a)? - 0.5 * theta.ln() + a - 0.5)
}

/// (S − S₀)/k_B = −½ ln θ + ½ + D − θD' with D the damping logarithm.
pub fn entropy_cutoff_closed(theta: f64, w: f64) -> Result<f64, BrownianError> {
    let d = damping_log_closed(theta, w)?;
    let roots = CutoffRoots::new(w)?;
    let k = theta / (2.0 * PI);
    let one = Complex64::new(1.0, 0.0);
    let term = |l: Complex64| -> Result<f64, BrownianError> { Ok((l * digamma(one + l * k)?).re) };
    let dprime = (term(roots.lambda_plus)? + term(roots.lambda_minus)? - w * digamma_real(1.0 + k * w)?) / (2.0 * PI);
    Ok(-0.5 * theta.ln() + 0.5 + d - theta * dprime)
}

/// S/k_B − ½ ln b as the temperature derivative of k_BT·ln Z, taken in the
/// variable u = 1/θ ∝ T: S/k_B = d[u ln Z(1/u)]/du.
fn entropy_from_free_energy<F>(theta: f64, mut log_z: F) -> Result<QuadResult, BrownianError>
where
    F: FnMut(f64) -> Result<f64, BrownianError>,
{
    let spec = QuadSpec::new(1e-6, 0.0, 100)?;
    try_derivative(|u| Ok::<f64, BrownianError>(u * log_z(1.0 / u)?), 1.0 / theta, &spec)
}

/// (S − S₀)/k_B for the Drude cutoff, from the digamma form, cross-checked by
/// differentiating k_BT·ln Z numerically.
pub fn entropy_cutoff(p: &BrownianParams) -> Result<f64, BrownianError> {
    let w = p.finite_cutoff()?;
    let closed = entropy_cutoff_closed(p.theta, w)?;
    let numeric = entropy_from_free_energy(p.theta, |th| {
        log_z_reduced(&BrownianParams::new(th, Cutoff::Finite(w), 1.0)?)
    })?;
    if (closed - numeric.value).abs() > 1e-6 {
        return Err(BrownianError::Consistency {
            what: "entropy",
            closed,
            check: numeric.value,
        });
    }
    Ok(closed)
}

/// (S − S₀)/k_B for either cutoff.
pub fn entropy(p: &BrownianParams) -> Result<f64, BrownianError> {
    match p.cutoff {
        Cutoff::Infinite => entropy_ohmic(p.theta),
        Cutoff::Finite(w) => entropy_cutoff_closed(p.theta, w),
    }
}

/// (S − S₀)/k_B as the T-derivative of k_BT·ln Z with ln Z from the explicit
/// product (ohmic damping approximated by a large finite cutoff by the caller).
pub fn entropy_from_product(theta: f64, w: f64) -> Result<QuadResult, BrownianError> {
    entropy_from_free_energy(theta, |th| Ok(-0.5 * th.ln() + damping_log_product(th, w)?.value))
}

/// S₀/k_B = ½ ln b.
pub fn entropy_zero_t(box_const: f64) -> Result<f64, BrownianError> {
    Ok(0.5 * positive("box constant", box_const)?.ln())
}

/// C/k_B = T ∂(S/k_B)/∂T = −θ ∂(S/k_B)/∂θ.
pub fn specific_heat(p: &BrownianParams) -> Result<f64, BrownianError> {
    let cutoff = p.cutoff;
    let spec = QuadSpec::new(1e-6, 0.0, 100)?;
    let r = try_derivative(
        |th| entropy(&BrownianParams::new(th, cutoff, 1.0)?),
        p.theta,
        &spec,
    )?;
    Ok(-p.theta * r.value)
}

/// Whether S − S₀ can become negative: γ̂'(0) < −1, i.e. w < 1 for the
/// Drude kernel.
pub fn negative_entropy_possible(cutoff: Cutoff) -> bool {
    match cutoff {
        Cutoff::Finite(w) => w < 1.0,
        Cutoff::Infinite => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;

    #[test]
    fn roots_satisfy_vieta() {
        for w in [0.01, 1.0, 3.9, 4.0, 10.0, 1e6] {
            let r = CutoffRoots::new(w).unwrap();
            let s = r.lambda_plus + r.lambda_minus;
            let p = r.lambda_plus * r.lambda_minus;
            assert!((s.re - w).abs() < 1e-12 * w && s.im.abs() < 1e-12 * w);
            assert!((p.re - w).abs() < 1e-12 * w && p.im.abs() < 1e-12 * w);
            assert_eq!(r.is_complex(), w < 4.0);
        }
    }

    #[test]
    fn ohmic_entropy_at_two_pi() {
        let s = entropy_ohmic(2.0 * PI).unwrap();
        let exact = EULER_GAMMA + 0.5 - 0.5 * (2.0 * PI).ln();
        assert!((s - exact).abs() < 1e-14, "{s} vs {exact}");
    }

    #[test]
    fn closed_form_matches_product() {
        for (theta, w) in [(1.0, 1.0), (0.01, 0.1), (100.0, 0.01), (10.0, 10.0), (3.0, 4.0)] {
            let c = damping_log_closed(theta, w).unwrap();
            let p = damping_log_product(theta, w).unwrap();
            assert!((c - p.value).abs() <= 1e-9 * c.abs().max(1e-3), "{theta} {w}: {c} vs {p:?}");
        }
    }

    #[test]
    fn infinite_cutoff_has_no_partition_function() {
        let p = BrownianParams::new(1.0, Cutoff::Infinite, 1.0).unwrap();
        assert!(matches!(log_z_reduced(&p), Err(BrownianError::Domain(_))));
    }

    #[test]
    fn zero_temperature_entropy() {
        assert_eq!(entropy_zero_t(1.0).unwrap(), 0.0);
        assert!((entropy_zero_t(1f64.exp().powi(2)).unwrap() - 1.0).abs() < 1e-15);
        assert!((entropy_zero_t(100.0).unwrap() - 2.302_585_092_994_046).abs() < 1e-14);
    }
}
