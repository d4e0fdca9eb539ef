//! Fourier-type integrals ∫₀^∞ w(ωx) f(x) dx on [0, ∞).
//!
//! The range is cut at the zeros of the weight; the panel integrals form an
//! (eventually) alternating series whose partial sums are accelerated by
//! repeated averaging (Euler transform). When the weight oscillates less than
//! once over the decay length of `f`, plain semi-infinite quadrature is used.

use super::quad::{try_integrate, try_integrate_semi_inf_opts, SemiInf};
use super::{NumError, QuadResult, QuadSpec};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// cos(ωx)
    Cos,
    /// sin(ωx)
    Sin,
    /// sin(ωx)/x, with the value ω at x = 0
    SinOverX,
}

impl Weight {
    fn eval(self, omega: f64, x: f64) -> f64 {
        match self {
            Weight::Cos => (omega * x).cos(),
            Weight::Sin => (omega * x).sin(),
            Weight::SinOverX => {
                if x == 0.0 {
                    omega
                } else {
                    (omega * x).sin() / x
                }
            }
        }
    }

    fn phase(self) -> f64 {
        match self {
            Weight::Cos => 0.5,
            Weight::Sin | Weight::SinOverX => 1.0,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OscOptions {
    /// Points where the envelope has structure; used inside panels.
    pub breaks: Vec<f64>,
    /// Known decay length of the envelope; probed when absent.
    pub decay_length: Option<f64>,
    /// Typical length scale of the envelope, used for the probe ladder and
    /// for the non-oscillatory fallback (default 1).
    pub scale: Option<f64>,
}

const EULER_WINDOW: usize = 16;
const MAX_PANELS: u64 = 1_000_000;
const LADDER: std::ops::RangeInclusive<i32> = -48..=80;

/// Decay length of |f| estimated on the ladder scale·2^k: the first point past
/// the running maximum where |f| stays below 1e-3 of it (three rungs in a
/// row), divided by ln 1000.
pub fn try_decay_length<F, E>(f: &mut F, scale: f64) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumError>,
{
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(NumError::InvalidArgument(format!("probe scale must be positive, got {scale}")).into());
    }
    let mut peak = 0.0f64;
    let mut below = 0;
    let mut first_below = 0.0;
    for k in LADDER {
        let x = scale * 2f64.powi(k);
        let a = f(x)?.abs();
        if !a.is_finite() {
            return Err(NumError::Envelope(format!("envelope is {a} at x = {x}")).into());
        }
        if a > peak {
            peak = a;
            below = 0;
        } else if a < 1e-3 * peak {
            if below == 0 {
                first_below = x;
            }
            below += 1;
            if below == 3 {
                return Ok(first_below / 1000f64.ln());
            }
        } else {
            below = 0;
        }
    }
    if peak == 0.0 {
        return Ok(scale);
    }
    Err(NumError::Envelope(format!(
        "|f| does not fall below 1e-3 of its maximum {peak} up to x = {}",
        scale * 2f64.powi(*LADDER.end())
    ))
    .into())
}

pub fn decay_length<F>(mut f: F, scale: f64) -> Result<f64, NumError>
where
    F: FnMut(f64) -> f64,
{
    try_decay_length(&mut |x| Ok::<f64, NumError>(f(x)), scale)
}

fn euler_estimate(partial: &[f64]) -> f64 {
    let m = partial.len().min(EULER_WINDOW);
    let mut w: Vec<f64> = partial[partial.len() - m..].to_vec();
    while w.len() > 1 {
        for i in 0..w.len() - 1 {
            w[i] = 0.5 * (w[i] + w[i + 1]);
        }
        w.pop();
    }
    w[0]
}

/// ∫₀^∞ weight(ωx)·f(x) dx with a fallible envelope.
///
/// Envelope failures (including an undeterminable decay length) are returned
/// as `Err`; stagnation of the accelerated panel sums within the budget is
/// reported through `converged = false`.
pub fn try_integrate_oscillatory<F, E>(
    mut f: F,
    omega: f64,
    weight: Weight,
    opts: &OscOptions,
    spec: &QuadSpec,
) -> Result<QuadResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumError>,
{
    spec.validate()?;
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(NumError::InvalidArgument(format!("omega must be finite and >= 0, got {omega}")).into());
    }
    let scale = opts.scale.unwrap_or(1.0);
    if omega == 0.0 {
        return match weight {
            Weight::Cos => {
                let range = SemiInf {
                    lower: 0.0,
                    scale,
                    breaks: &opts.breaks,
                };
                try_integrate_semi_inf_opts(f, &range, spec)
            }
            Weight::Sin | Weight::SinOverX => Ok(QuadResult::exact(0.0)),
        };
    }
    let decay = match opts.decay_length {
        Some(l) if l > 0.0 && l.is_finite() => l,
        Some(l) => {
            return Err(NumError::InvalidArgument(format!("decay length must be positive, got {l}")).into())
        }
        None => try_decay_length(&mut f, scale)?,
    };
    if omega * decay < 1.0 {
        let range = SemiInf {
            lower: 0.0,
            scale: decay,
            breaks: &opts.breaks,
        };
        return try_integrate_semi_inf_opts(|x| Ok::<f64, E>(weight.eval(omega, x) * f(x)?), &range, spec);
    }

    let panel_spec = spec.with_abs(spec.abs_tol * 0.1);
    let mut sorted_breaks: Vec<f64> = opts.breaks.iter().copied().filter(|b| *b > 0.0).collect();
    sorted_breaks.sort_by(f64::total_cmp);

    let mut partial: Vec<f64> = Vec::new();
    let mut sum = 0.0;
    let mut sum_abs = 0.0;
    let mut quad_err = 0.0;
    let mut evals = 0u64;
    let mut all_panels_ok = true;
    let mut prev_est: Option<f64> = None;
    let mut prev_diff: Option<f64> = None;
    let mut lo = 0.0;
    let mut k = 0u64;
    loop {
        let hi = (k as f64 + weight.phase()) * PI / omega;
        let mut pts = vec![lo];
        pts.extend(sorted_breaks.iter().copied().filter(|&b| b > lo && b < hi));
        pts.push(hi);
        let r = try_integrate(|x| Ok::<f64, E>(weight.eval(omega, x) * f(x)?), &pts, &panel_spec)?;
        evals += r.evals;
        quad_err += r.err_estimate;
        all_panels_ok &= r.converged;
        sum += r.value;
        sum_abs += r.value.abs();
        partial.push(sum);

        let est = euler_estimate(&partial);
        let floor = 100.0 * f64::EPSILON * sum_abs;
        let tol = spec.tolerance(est).max(floor);
        let diff = prev_est.map(|p| (est - p).abs());
        if let (Some(d), Some(pd)) = (diff, prev_diff) {
            if k >= 3 && d <= tol && pd <= tol {
                return Ok(QuadResult {
                    value: est,
                    err_estimate: d.max(pd) + quad_err,
                    evals,
                    converged: all_panels_ok,
                });
            }
        }
        if evals >= spec.max_evals || k >= MAX_PANELS {
            return Ok(QuadResult {
                value: est,
                err_estimate: diff.unwrap_or(est.abs()) + quad_err,
                evals,
                converged: false,
            });
        }
        prev_diff = diff;
        prev_est = Some(est);
        lo = hi;
        k += 1;
    }
}

pub fn integrate_oscillatory<F>(
    mut f: F,
    omega: f64,
    weight: Weight,
    opts: &OscOptions,
    spec: &QuadSpec,
) -> Result<QuadResult, NumError>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_oscillatory(|x| Ok::<f64, NumError>(f(x)), omega, weight, opts, spec)
}

/// ∫₀^∞ cos(ωx) f(x) dx.
pub fn integrate_cosine<F>(f: F, omega: f64, spec: &QuadSpec) -> Result<QuadResult, NumError>
where
    F: FnMut(f64) -> f64,
{
    integrate_oscillatory(f, omega, Weight::Cos, &OscOptions::default(), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::integrate_semi_inf;

    #[test]
    fn laplace_identity() {
        let r = integrate_cosine(|x| (-x).exp(), 1.0, &QuadSpec::default()).unwrap();
        assert!(r.converged);
        assert!((r.value - 0.5).abs() < 1e-10, "{r:?}");
        let r = integrate_cosine(|x| (-x).exp(), 25.0, &QuadSpec::default()).unwrap();
        assert!((r.value - 1.0 / 626.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn zero_frequency_is_plain_integral() {
        let r = integrate_cosine(|x| (-x).exp(), 0.0, &QuadSpec::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let plain = integrate_semi_inf(|x| (-x).exp(), &QuadSpec::default()).unwrap();
        assert!((r.value - plain.value).abs() <= r.err_estimate + plain.err_estimate + 1e-15);
    }

    #[test]
    fn sine_weights() {
        // ∫ sin(ωx) e^{-x} = ω/(1+ω²); ∫ sin(ωx)/x e^{-x} = atan ω
        let o = OscOptions::default();
        let s = QuadSpec::default();
        let r = integrate_oscillatory(|x| (-x).exp(), 3.0, Weight::Sin, &o, &s).unwrap();
        assert!((r.value - 0.3).abs() < 1e-10, "{r:?}");
        let r = integrate_oscillatory(|x| (-x).exp(), 7.0, Weight::SinOverX, &o, &s).unwrap();
        assert!((r.value - 7f64.atan()).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn slowly_decaying_growing_envelope() {
        // ∫ cos x · x^{3/2} e^{-εx} = Γ(5/2) Re (ε - i)^{-5/2}
        let eps = 0.01;
        let exact = {
            let z = num_complex::Complex64::new(eps, -1.0);
            0.75 * std::f64::consts::PI.sqrt() * z.powf(-2.5).re
        };
        let r = integrate_cosine(|x| x.powf(1.5) * (-eps * x).exp(), 1.0, &QuadSpec::default()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - exact).abs() < 1e-8, "{} vs {exact}", r.value);
    }

    #[test]
    fn hints_skip_probe() {
        let opts = OscOptions {
            decay_length: Some(1.0),
            breaks: vec![0.1],
            scale: None,
        };
        let r = integrate_oscillatory(|x| (-x).exp(), 10.0, Weight::Cos, &opts, &QuadSpec::default()).unwrap();
        assert!((r.value - 1.0 / 101.0).abs() < 1e-11);
    }

    #[test]
    fn envelope_without_decay_is_error() {
        let e = integrate_cosine(|_| 1.0, 1.0, &QuadSpec::default()).unwrap_err();
        assert!(matches!(e, NumError::Envelope(_)));
        let e = integrate_cosine(|x| if x > 3.0 { f64::NAN } else { 1.0 }, 1.0, &QuadSpec::default());
        assert!(e.is_err());
    }

    #[test]
    fn stagnation_is_flagged() {
        let s = QuadSpec::new(1e-14, 0.0, 200).unwrap();
        let opts = OscOptions {
            decay_length: Some(1e3),
            ..Default::default()
        };
        let r = integrate_oscillatory(|x| (1.0 + x).powf(-0.3), 1.0, Weight::Cos, &opts, &s).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn decay_length_of_exponential() {
        let l = decay_length(|x| (-2.0 * x).exp(), 1.0).unwrap();
        assert!(l > 0.3 && l < 1.0, "{l}");
        assert_eq!(decay_length(|_| 0.0, 2.0).unwrap(), 2.0);
    }
}
