//! Casimir force, free energy and entropy between two identical mirrors.
//!
//! All quantities are dimensionless: τ = k_BTL/ħc, y = ξL/c, v = κL. Force
//! and free energy are normalized by their zero-temperature values for ideal
//! mirrors (η_F, η_E), and the entropy per area is s = S·L²/(k_B·A).
//!
//! Two independent spectral representations are implemented: the Matsubara
//! sum over y_n = 2πnτ and the resummed form, a zero-temperature integral
//! plus a series of cosine transforms at frequencies n/τ.

mod delta;
mod entropy;
mod eta;
mod kernels;

pub use delta::{delta_clp_grid, delta_eta_ft_classical, Relaxation};
pub use entropy::ENTROPY_METHOD_SWITCH;
pub use kernels::KernelKind;

use crate::mirror::{MirrorError, MirrorModel, Polarization};
use crate::numkit::{NumError, QuadSpec};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Numerical(#[from] NumError),
    #[error("{what} did not converge (value {value:e}, error estimate {err:e})")]
    NotConverged { what: String, value: f64, err: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolSelect {
    TE,
    TM,
    Both,
}

impl PolSelect {
    pub fn pols(&self) -> &'static [Polarization] {
        match self {
            PolSelect::TE => &[Polarization::TE],
            PolSelect::TM => &[Polarization::TM],
            PolSelect::Both => &Polarization::BOTH,
        }
    }
}

impl From<Polarization> for PolSelect {
    fn from(p: Polarization) -> Self {
        match p {
            Polarization::TE => PolSelect::TE,
            Polarization::TM => PolSelect::TM,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Matsubara,
    Resummed,
}

impl Method {
    /// Matsubara at τ ≥ 0.05, resummed below.
    pub fn auto(tau: f64) -> Method {
        if tau >= ENTROPY_METHOD_SWITCH {
            Method::Matsubara
        } else {
            Method::Resummed
        }
    }
}

/// Dimensionless temperature τ = k_BTL/ħc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    tau: f64,
}

impl ThermoPoint {
    pub fn new(tau: f64) -> Result<Self, CasimirError> {
        if tau > 0.0 && tau.is_finite() {
            Ok(ThermoPoint { tau })
        } else {
            Err(CasimirError::Domain(format!("temperature tau must be positive and finite, got {tau}")))
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// ħβγ = g/τ.
    pub fn theta(&self, g: f64) -> f64 {
        g / self.tau
    }
}

/// Zero-temperature and thermal parts of a normalized force or free energy.
/// The Matsubara representation has no natural split and reports its total
/// in `eta_t` with `eta0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaResult {
    pub eta0: f64,
    pub eta_t: f64,
    pub err: f64,
    pub method: Method,
}

impl EtaResult {
    pub fn total(&self) -> f64 {
        self.eta0 + self.eta_t
    }
}

/// Tolerances for the nested quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    /// κ-integral inside Φ and Ψ.
    pub kernel: QuadSpec,
    /// Frequency integrals and cosine transforms of Φ and Ψ.
    pub outer: QuadSpec,
    /// Matsubara and resummed series.
    pub series: QuadSpec,
    /// Temperature and separation derivatives.
    pub derivative: QuadSpec,
}

impl Default for Accuracy {
    fn default() -> Self {
        Accuracy {
            kernel: QuadSpec::new(1e-13, 0.0, 400_000).expect("valid"),
            outer: QuadSpec::new(1e-11, 0.0, 4_000_000).expect("valid"),
            series: QuadSpec::new(1e-10, 0.0, 200_000).expect("valid"),
            derivative: QuadSpec::new(1e-6, 0.0, 1_000).expect("valid"),
        }
    }
}

impl Accuracy {
    /// Every tolerance multiplied by `factor` (factor > 1 loosens).
    pub fn scaled(&self, factor: f64) -> Self {
        let s = |q: QuadSpec| QuadSpec {
            rel_tol: (q.rel_tol * factor).min(0.1),
            abs_tol: q.abs_tol * factor,
            max_evals: q.max_evals,
        };
        Accuracy {
            kernel: s(self.kernel),
            outer: s(self.outer),
            series: s(self.series),
            derivative: s(self.derivative),
        }
    }
}

/// Evaluation engine carrying the tolerances. Stateless apart from them, so a
/// shared reference may be used from any number of threads.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Engine {
    pub acc: Accuracy,
}

impl Engine {
    pub fn new(acc: Accuracy) -> Self {
        Engine { acc }
    }
}

pub(crate) fn require(
    r: crate::numkit::QuadResult,
    what: impl FnOnce() -> String,
) -> Result<crate::numkit::QuadResult, CasimirError> {
    if r.converged {
        Ok(r)
    } else {
        Err(CasimirError::NotConverged {
            what: what(),
            value: r.value,
            err: r.err_estimate,
        })
    }
}

/// Φ(y) = ∫_y^∞ v² f(y, v) dv.
pub fn phi(model: &MirrorModel, pol: PolSelect, y: f64) -> Result<f64, CasimirError> {
    Engine::default().kernel(KernelKind::Force, model, pol, y)
}

/// Ψ(y) = ∫_y^∞ v ln(1 − r² e^{−2v}) dv.
pub fn psi_kernel(model: &MirrorModel, pol: PolSelect, y: f64) -> Result<f64, CasimirError> {
    Engine::default().kernel(KernelKind::Energy, model, pol, y)
}

pub fn eta_f_matsubara(model: &MirrorModel, pol: PolSelect, t: ThermoPoint) -> Result<EtaResult, CasimirError> {
    Engine::default().eta_f(model, pol, t, Method::Matsubara)
}

pub fn eta_f_resummed(model: &MirrorModel, pol: PolSelect, t: ThermoPoint) -> Result<EtaResult, CasimirError> {
    Engine::default().eta_f(model, pol, t, Method::Resummed)
}

pub fn eta_e(model: &MirrorModel, pol: PolSelect, t: ThermoPoint, method: Method) -> Result<EtaResult, CasimirError> {
    Engine::default().eta_e(model, pol, t, method)
}

/// s(τ) = S·L²/(k_B·A).
pub fn entropy_dimensionless(model: &MirrorModel, pol: PolSelect, t: ThermoPoint) -> Result<f64, CasimirError> {
    Engine::default().entropy(model, pol, t).map(|r| r.value)
}

/// η_F^T(Drude) − η_F^T(plasma) for the TE mode.
pub fn delta_eta_ft(alpha_p: f64, g: f64, t: ThermoPoint) -> Result<f64, CasimirError> {
    Engine::default().delta_eta_ft(alpha_p, g, t).map(|r| r.value)
}

/// −[Φ_TE^Drude − Φ_TE^plasma] at frequency ξ/γ = x.
pub fn delta_phi_te(alpha_p: f64, relax: Relaxation, x: f64) -> Result<f64, CasimirError> {
    Engine::default().delta_phi_te(alpha_p, relax, x)
}
