//! Special functions: log-gamma, digamma and the Riemann zeta function.
//!
//! Real log-gamma uses a Taylor series around the zeros of `ln Γ` (at 1 and
//! 2) and Stirling's series with recurrence elsewhere, so the relative error
//! stays small even close to the zeros. Complex log-gamma and digamma are
//! restricted to the right half-plane, which is all the cutoff roots of the
//! Drude damping kernel ever need.

use num_complex::Complex64;
use std::sync::OnceLock;
use thiserror::Error;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Bernoulli numbers B_2, B_4, ..., B_22.
const BERNOULLI: [f64; 11] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function}: argument {arg} outside the domain ({domain})")]
    Domain {
        function: &'static str,
        arg: String,
        domain: &'static str,
    },
}

fn domain(function: &'static str, arg: impl ToString, domain: &'static str) -> SpecFunError {
    SpecFunError::Domain {
        function,
        arg: arg.to_string(),
        domain,
    }
}

/// Natural log of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("ln_gamma", x, "x > 0, finite"));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(1+x)/x
        return ln_gamma_one_plus(x) - x.ln();
    }
    if x < 1.5 {
        return ln_gamma_one_plus(x - 1.0);
    }
    if x < 2.5 {
        return (x - 2.0).ln_1p() + ln_gamma_one_plus(x - 2.0);
    }
    if x < 15.0 {
        // Shift down into [1.5, 2.5); every term is positive.
        let mut y = x;
        let mut prod = 1.0;
        while y >= 2.5 {
            y -= 1.0;
            prod *= y;
        }
        return prod.ln() + ln_gamma_pos(y);
    }
    stirling_real(x)
}

/// ln Γ(1+ε) for |ε| ≤ 1/2, from the Taylor series in ζ(k).
fn ln_gamma_one_plus(eps: f64) -> f64 {
    let table = zeta_minus_one_table();
    // Σ_{k≥2} (-1)^k ε^k/k = ε - ln(1+ε); the remainder uses ζ(k) - 1 ~ 2^-k.
    let mut rest = 0.0;
    let mut pow = -eps;
    for (i, zm1) in table.iter().enumerate() {
        let k = (i + 2) as f64;
        pow *= -eps;
        let term = zm1 * pow / k;
        rest += term;
        if term.abs() < 1e-18 * rest.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA * eps + (eps - eps.ln_1p()) + rest
}

fn stirling_real(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for (k, b) in BERNOULLI.iter().take(8).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += b / (n * (n - 1.0)) * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + series
}

/// ζ(k) - 1 for k = 2..=41, built once from the Euler–Maclaurin tail.
fn zeta_minus_one_table() -> &'static [f64; 40] {
    static TABLE: OnceLock<[f64; 40]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; 40];
        for (i, slot) in t.iter_mut().enumerate() {
            *slot = zeta_from(2.0 + i as f64, 2);
        }
        t
    })
}

/// Σ_{n ≥ start} n^{-s} via Euler–Maclaurin with 12 explicit terms.
fn zeta_from(s: f64, start: u64) -> f64 {
    let n_cut = start + 12;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in start..n_cut {
        let y = (n as f64).powf(-s) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let nf = n_cut as f64;
    let nps = nf.powf(-s);
    let mut tail = nf * nps / (s - 1.0) + 0.5 * nps;
    // Σ_k B_2k/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut pw = nps / nf;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * pw;
        tail += term;
        if term.abs() < 1e-17 * tail.abs() {
            break;
        }
        let m = 2.0 * k as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        fact *= (m + 3.0) * (m + 4.0);
        pw /= nf * nf;
    }
    sum + tail
}

/// Riemann zeta for real s > 1.
pub fn zeta(s: f64) -> Result<f64, SpecFunError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain("zeta", s, "s > 1"));
    }
    if s > 60.0 {
        return Ok(1.0 + 2f64.powf(-s) + 3f64.powf(-s));
    }
    Ok(1.0 + zeta_from(s, 2))
}

/// Principal-branch-continuous ln Γ(z) for Re z > 0.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(z.re > 0.0) || !z.is_finite() {
        return Err(domain("ln_gamma_complex", z, "Re z > 0"));
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(ln_gamma_pos(z.re), 0.0));
    }
    if z.im < 0.0 {
        return ln_gamma_complex(z.conj()).map(|w| w.conj());
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for (k, b) in BERNOULLI.iter().take(8).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += p * (b / (n * (n - 1.0)));
        p *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - shift)
}

/// Digamma ψ(z) = Γ'(z)/Γ(z) for Re z > 0. Real input gives an exactly real
/// result, and ψ(conj z) = conj ψ(z) holds bit for bit.
pub fn digamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(z.re > 0.0) || !z.is_finite() {
        return Err(domain("digamma", z, "Re z > 0"));
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(digamma_pos(z.re), 0.0));
    }
    if z.im < 0.0 {
        return digamma(z.conj()).map(|w| w.conj());
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 15.0 {
        acc -= w.inv();
        w += 1.0;
    }
    Ok(acc + digamma_asymptotic_c(w))
}

/// Real digamma for x > 0.
pub fn digamma_real(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("digamma_real", x, "x > 0"));
    }
    Ok(digamma_pos(x))
}

fn digamma_pos(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut w = x;
    while w < 15.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut series = 0.0;
    let mut p = inv2;
    for (k, b) in BERNOULLI.iter().take(8).enumerate() {
        series += b / (2.0 * (k as f64 + 1.0)) * p;
        p *= inv2;
    }
    acc + w.ln() - 0.5 / w - series
}

fn digamma_asymptotic_c(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for (k, b) in BERNOULLI.iter().take(8).enumerate() {
        series += p * (b / (2.0 * (k as f64 + 1.0)));
        p *= inv2;
    }
    w.ln() - inv * 0.5 - series
}

/// Σ_{n≥1} ln(n)/n^s for s > 1, i.e. −ζ'(s), from the s-derivative of the
/// Euler–Maclaurin tail used by [`zeta`].
pub fn zeta_log_series(s: f64) -> Result<f64, SpecFunError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain("zeta_log_series", s, "s > 1"));
    }
    let n_cut: u64 = 14;
    let mut sum = 0.0;
    for n in 2..n_cut {
        let nf = n as f64;
        sum += nf.ln() * nf.powf(-s);
    }
    let nf = n_cut as f64;
    let ln_n = nf.ln();
    let nps = nf.powf(-s);
    let sm1 = s - 1.0;
    let mut tail = nf * nps * (ln_n / sm1 + 1.0 / (sm1 * sm1)) + 0.5 * ln_n * nps;
    // term_k = B_2k/(2k)! · P_k(s) · N^{-s-2k+1}, P_k(s) = s(s+1)...(s+2k-2)
    let mut fact = 2.0;
    let mut pw = nps / nf;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let top = 2 * k;
        let mut p = 1.0;
        let mut dlog = 0.0;
        for j in 0..=top {
            p *= s + j as f64;
            dlog += 1.0 / (s + j as f64);
        }
        let term = b / fact * p * pw * (dlog - ln_n);
        tail -= term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let m = top as f64;
        fact *= (m + 3.0) * (m + 4.0);
        pw /= nf * nf;
    }
    Ok(sum + tail)
}
