//! Infinite series with tail estimation.

use super::{check_finite, NumError, QuadResult, QuadSpec};

const EULER_WINDOW: usize = 16;

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

/// Σ_{n ≥ first} term(n), evaluating at least `min_terms` terms.
///
/// The tail model is picked from the last terms: alternating signs use the
/// Euler transform of the partial sums, a settled ratio ρ < 1 adds the
/// geometric tail a·ρ/(1 − ρ), and anything else is treated as a power law
/// c·n^{-p} whose tail is taken from the Euler–Maclaurin integral, with the
/// error judged at doubling checkpoints.
pub fn try_sum_accelerated<F, E>(
    first: u64,
    min_terms: u64,
    mut term: F,
    spec: &QuadSpec,
) -> Result<QuadResult, E>
where
    F: FnMut(u64) -> Result<f64, E>,
    E: From<NumError>,
{
    spec.validate()?;
    let min_terms = min_terms.max(6) as usize;
    let mut a: Vec<f64> = Vec::new();
    let mut partial: Vec<f64> = Vec::new();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut prev_est: Option<f64> = None;
    let mut prev_diff: Option<f64> = None;
    let mut checkpoint = 16usize.max(min_terms.next_power_of_two());
    let mut power_est: Option<f64> = None;
    let mut last = (0.0, f64::INFINITY);
    loop {
        let n = first + a.len() as u64;
        let t = check_finite(n as f64, term(n)?)?;
        a.push(t);
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        partial.push(sum);
        let count = a.len();
        let done = |value: f64, err: f64| QuadResult {
            value,
            err_estimate: err,
            evals: count as u64,
            converged: true,
        };
        if count >= min_terms {
            let l = &a[count - 4..];
            if l.iter().all(|x| *x == 0.0) {
                return Ok(done(sum, 0.0));
            }
            let round = 4.0 * f64::EPSILON * count as f64 * sum.abs();
            if l.windows(2).all(|w| w[0] * w[1] < 0.0) {
                let est = euler_estimate(&partial);
                let tol = spec.tolerance(est).max(round);
                let diff = prev_est.map(|p| (est - p).abs());
                last = (est, diff.unwrap_or(f64::INFINITY));
                if let (Some(d), Some(pd)) = (diff, prev_diff) {
                    if d <= tol && pd <= tol {
                        return Ok(done(est, d.max(pd)));
                    }
                }
                prev_est = Some(est);
                prev_diff = diff;
            } else if l.iter().all(|x| *x != 0.0) && l.windows(2).all(|w| w[0] * w[1] > 0.0) {
                let rho = l[3] / l[2];
                let rho_prev = l[2] / l[1];
                let h = count / 2;
                let rho_half = a[h] / a[h - 1];
                let geometric = rho < 1.0
                    && rho_half > 0.0
                    && rho_half < 1.0
                    && (rho.ln() - rho_half.ln()).abs() <= 0.25 * rho.ln().abs();
                if geometric {
                    let tail = l[3] * rho / (1.0 - rho);
                    let terr = tail.abs() * (rho - rho_prev).abs() / (1.0 - rho);
                    let est = sum + tail;
                    last = (est, tail.abs());
                    if tail.abs() <= spec.tolerance(est).max(round) {
                        return Ok(done(est, terr.max(round)));
                    }
                } else if count >= checkpoint {
                    checkpoint *= 2;
                    let n_last = (first + count as u64 - 1) as f64;
                    let n_half = (first + h as u64 - 1) as f64;
                    let p = (a[h - 1] / l[3]).ln() / (n_last / n_half).ln();
                    if p > 1.0 && n_half > 0.0 {
                        let c = l[3] * n_last.powf(p);
                        let m = n_last + 0.5;
                        let tail = c * (m.powf(1.0 - p) / (p - 1.0) - p / 24.0 * m.powf(-p - 1.0));
                        let est = sum + tail;
                        if let Some(prev) = power_est {
                            let d = (est - prev).abs();
                            last = (est, d);
                            if d <= spec.tolerance(est).max(round) {
                                return Ok(done(est, d.max(round)));
                            }
                        }
                        power_est = Some(est);
                    }
                }
            }
        }
        if count as u64 >= spec.max_evals {
            let (value, err) = if last.1.is_finite() { last } else { (sum, f64::INFINITY) };
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evals: count as u64,
                converged: false,
            });
        }
    }
}

pub fn sum_accelerated<F>(first: u64, min_terms: u64, mut term: F, spec: &QuadSpec) -> Result<QuadResult, NumError>
where
    F: FnMut(u64) -> f64,
{
    try_sum_accelerated(first, min_terms, |n| Ok::<f64, NumError>(term(n)), spec)
}

/// Σ_{n ≥ first} h(n) for a term that is a smooth function of n.
///
/// The first `head` terms are summed explicitly; the rest is replaced by the
/// midpoint Euler–Maclaurin form ∫_{N+½}^∞ h(x) dx + h'(N+½)/24 − 7h'''(N+½)/5760,
/// where `tail(N + ½, head_sum)` must return the integral (the current head sum
/// sets the accuracy it needs) and the derivatives come from
/// differences of the neighbouring terms. The head is doubled while the last
/// correction is above tolerance; the error estimates of the terms set a
/// noise floor for that test.
pub fn try_sum_smooth<F, T, E>(
    first: u64,
    head: u64,
    mut term: F,
    mut tail: T,
    spec: &QuadSpec,
) -> Result<QuadResult, E>
where
    F: FnMut(u64) -> Result<QuadResult, E>,
    T: FnMut(f64, f64) -> Result<QuadResult, E>,
    E: From<NumError>,
{
    spec.validate()?;
    if head < 2 {
        return Err(NumError::InvalidArgument(format!("head must hold at least 2 terms, got {head}")).into());
    }
    let mut h: Vec<f64> = Vec::new();
    let mut herr: Vec<f64> = Vec::new();
    let mut last_n = first + head - 1;
    let mut evals = 0u64;
    let mut all_terms_ok = true;
    loop {
        while (h.len() as u64) < last_n - first + 3 {
            let n = first + h.len() as u64;
            let r = term(n)?;
            h.push(check_finite(n as f64, r.value)?);
            herr.push(r.err_estimate);
            all_terms_ok &= r.converged;
            evals += r.evals.max(1);
        }
        let k = (last_n - first) as usize;
        let head_sum: f64 = {
            let mut s = 0.0;
            let mut c = 0.0;
            for &v in &h[..=k] {
                let y = v - c;
                let t = s + y;
                c = (t - s) - y;
                s = t;
            }
            s
        };
        let (hm1, h0, h1, h2) = (h[k - 1], h[k], h[k + 1], h[k + 2]);
        let d1 = (27.0 * (h1 - h0) - (h2 - hm1)) / 24.0;
        let d3 = h2 - 3.0 * h1 + 3.0 * h0 - hm1;
        let integral = tail(last_n as f64 + 0.5, head_sum)?;
        evals += integral.evals;
        let corr3 = -7.0 * d3 / 5760.0;
        let value = head_sum + integral.value + d1 / 24.0 + corr3;
        let round = 4.0 * f64::EPSILON * h[..=k].iter().map(|v| v.abs()).sum::<f64>();
        let noise = herr[k - 1..=k + 2].iter().sum::<f64>();
        let term_err: f64 = herr[..=k].iter().sum();
        let err = integral.err_estimate + term_err + 0.05 * corr3.abs() + round;
        let terms = h.len() as u64;
        if 0.05 * corr3.abs() <= spec.tolerance(value).max(round).max(noise) || terms >= spec.max_evals {
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evals,
                converged: integral.converged && all_terms_ok && terms < spec.max_evals,
            });
        }
        last_n = first + 2 * (last_n - first + 1) - 1;
    }
}

pub fn sum_smooth<F, T>(first: u64, head: u64, mut term: F, mut tail: T, spec: &QuadSpec) -> Result<QuadResult, NumError>
where
    F: FnMut(u64) -> f64,
    T: FnMut(f64, f64) -> Result<QuadResult, NumError>,
{
    try_sum_smooth(first, head, |n| Ok::<QuadResult, NumError>(QuadResult::exact(term(n))), |x0, head_sum| tail(x0, head_sum), spec)
}
