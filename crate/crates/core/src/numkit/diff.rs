//! Central differences with one level of Richardson extrapolation.

use super::{check_finite, NumError, QuadResult, QuadSpec};

/// f'(x) for x > 0. The base step is h = x·rel_tol^{1/3}; central differences
/// at h, h/2 and h/4 give two Richardson values whose disagreement (plus a
/// roundoff bound) is the error estimate.
pub fn try_derivative<F, E>(mut f: F, x: f64, spec: &QuadSpec) -> Result<QuadResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumError>,
{
    spec.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(NumError::InvalidArgument(format!("derivative point must be positive, got {x}")).into());
    }
    let rel = if spec.rel_tol > 0.0 { spec.rel_tol } else { 1e-9 };
    let h = x * rel.cbrt().clamp(1e-6, 0.1);
    let mut fmax = 0.0f64;
    let mut central = |step: f64| -> Result<f64, E> {
        let hi = check_finite(x + step, f(x + step)?)?;
        let lo = check_finite(x - step, f(x - step)?)?;
        fmax = fmax.max(hi.abs()).max(lo.abs());
        Ok((hi - lo) / (2.0 * step))
    };
    let d1 = central(h)?;
    let d2 = central(0.5 * h)?;
    let d4 = central(0.25 * h)?;
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    let round = 8.0 * f64::EPSILON * fmax / (0.25 * h);
    let err = (r2 - r1).abs() + round;
    Ok(QuadResult {
        value: r2,
        err_estimate: err,
        evals: 6,
        converged: (r2 - r1).abs() <= spec.tolerance(r2).max(round),
    })
}

pub fn derivative<F>(mut f: F, x: f64, spec: &QuadSpec) -> Result<QuadResult, NumError>
where
    F: FnMut(f64) -> f64,
{
    try_derivative(|t| Ok::<f64, NumError>(f(t)), x, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = QuadSpec::default();
        let r = derivative(|x| x * x * x, 2.0, &s).unwrap();
        assert!((r.value - 12.0).abs() < 1e-8 && r.converged);
        let r = derivative(f64::ln, 0.5, &s).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8 && r.converged);
        let r = derivative(f64::sin, 1.0, &s).unwrap();
        assert!((r.value - 1f64.cos()).abs() < 1e-9 && r.converged);
        assert!((r.value - 1f64.cos()).abs() <= 3.0 * r.err_estimate);
    }

    #[test]
    fn rejects_nonpositive_point() {
        assert!(derivative(|x| x, 0.0, &QuadSpec::default()).is_err());
        assert!(derivative(|x| x, -1.0, &QuadSpec::default()).is_err());
    }

    #[test]
    fn rough_function_is_flagged() {
        let r = derivative(|x| (1e4 * x).sin() * 1e-3 + x, 1.0, &QuadSpec::default()).unwrap();
        assert!(!r.converged);
    }
}
