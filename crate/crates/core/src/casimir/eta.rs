//! Normalized force η_F and free energy η_E in the Matsubara and resummed
//! representations.

use super::kernels::{y_breaks, KernelKind};
use super::{require, CasimirError, Engine, EtaResult, Method, PolSelect, ThermoPoint};
use crate::mirror::MirrorModel;
use crate::numkit::{
    try_decay_length, try_integrate_oscillatory, try_integrate_semi_inf_opts, try_sum_accelerated, try_sum_smooth,
    OscOptions, QuadResult, SemiInf, Weight,
};
use std::f64::consts::PI;

/// Relative step for the separation derivative of the free energy.
const SCALE_STEP: f64 = 1e-4;

impl KernelKind {
    /// Prefactor of τ·Σ' K(2πnτ).
    fn matsubara_prefactor(self) -> f64 {
        match self {
            KernelKind::Force => 240.0 / PI.powi(3),
            KernelKind::Energy => -360.0 / PI.powi(3),
        }
    }

    /// Prefactor of ∫₀^∞K; the thermal series carries twice this.
    fn zero_prefactor(self) -> f64 {
        match self {
            KernelKind::Force => 120.0 / PI.powi(4),
            KernelKind::Energy => -180.0 / PI.powi(4),
        }
    }
}

impl Engine {
    /// τ[½K(0) + Σ_{n≥1} K(2πnτ)].
    pub(crate) fn matsubara_sum(
        &self,
        kind: KernelKind,
        model: &MirrorModel,
        pol: PolSelect,
        tau: f64,
    ) -> Result<QuadResult, CasimirError> {
        let k0 = self.kernel_unchecked(kind, model, pol, 0.0)?;
        let min_terms = (4.0 / (PI * tau)).ceil() as u64;
        let s = try_sum_accelerated(
            1,
            min_terms,
            |n| self.kernel_unchecked(kind, model, pol, 2.0 * PI * n as f64 * tau),
            &self.acc.series,
        )?;
        let s = require(s, || format!("Matsubara sum at tau = {tau}"))?;
        Ok(QuadResult {
            value: tau * (0.5 * k0 + s.value),
            err_estimate: tau * s.err_estimate,
            evals: s.evals + 1,
            converged: true,
        })
    }

    /// ∫₀^∞ K(y) dy.
    pub(crate) fn zero_temperature_integral(
        &self,
        kind: KernelKind,
        model: &MirrorModel,
        pol: PolSelect,
    ) -> Result<QuadResult, CasimirError> {
        let breaks = y_breaks(model);
        let range = SemiInf {
            lower: 0.0,
            scale: 0.5,
            breaks: &breaks,
        };
        let r = try_integrate_semi_inf_opts(
            |y| self.kernel_unchecked(kind, model, pol, y),
            &range,
            &self.acc.outer,
        )?;
        require(r, || format!("{kind:?} zero-temperature integral"))
    }

    /// Σ_{n≥1} ∫₀^∞ cos(ny/τ) K(y) dy.
    ///
    /// The terms are a smooth function of n that may stay flat for many
    /// terms (Drude TE up to n ~ s0·τ), so the series is summed with an
    /// explicit head and the Euler–Maclaurin tail
    /// ∫_{x0}^∞ Ĉ(x/τ) dx = τ[(π/2)K(0) − ∫₀^∞ K(y) sin(ay)/y dy], a = x0/τ,
    /// evaluated as τ[K(0)·atan(1/a) − ∫₀^∞ (K(y) − K(0)e^{−y}) sin(ay)/y dy]
    /// to avoid cancellation. The tail is resolved to the accuracy of the head
    /// sum or to the quadrature resolution on the scale of K(0).
    pub(crate) fn thermal_series(
        &self,
        kind: KernelKind,
        model: &MirrorModel,
        pol: PolSelect,
        tau: f64,
    ) -> Result<QuadResult, CasimirError> {
        let k = |y: f64| self.kernel_unchecked(kind, model, pol, y);
        let k0 = k(0.0)?;
        let decay = try_decay_length(&mut |y| k(y), 0.5)?;
        let opts = OscOptions {
            breaks: y_breaks(model),
            decay_length: Some(decay),
            scale: Some(0.5),
        };
        let sub_opts = OscOptions {
            decay_length: Some(decay.max(1.0)),
            ..opts.clone()
        };
        let mut head = 16.0f64.max(32.0 * tau);
        if let Some(g) = model.g() {
            head = head.max(4.0 * tau / g);
        }
        let term = |n: u64| -> Result<QuadResult, CasimirError> {
            let omega = n as f64 / tau;
            let r = try_integrate_oscillatory(k, omega, Weight::Cos, &opts, &self.acc.outer)?;
            require(r, || format!("cosine transform at omega = {omega}"))
        };
        let tail = |x0: f64, head_sum: f64| -> Result<QuadResult, CasimirError> {
            let a = x0 / tau;
            let lead = k0 * (1.0 / a).atan();
            let floor = (10.0 * k0.abs()).max(0.1 * self.acc.series.rel_tol / self.acc.outer.rel_tol * head_sum.abs() / tau);
            let spec = self.acc.outer.with_abs(self.acc.outer.abs_tol.max(self.acc.outer.rel_tol * floor));
            let r = try_integrate_oscillatory(
                |y| Ok::<f64, CasimirError>(k(y)? - k0 * (-y).exp()),
                a,
                Weight::SinOverX,
                &sub_opts,
                &spec,
            )?;
            let r = require(r, || format!("resummed tail at x0 = {x0}"))?;
            Ok(QuadResult {
                value: tau * (lead - r.value),
                err_estimate: tau * r.err_estimate,
                evals: r.evals,
                converged: true,
            })
        };
        let s = try_sum_smooth(1, head.ceil() as u64, term, tail, &self.acc.series)?;
        require(s, || format!("resummed series at tau = {tau}"))
    }

    fn eta_generic(
        &self,
        kind: KernelKind,
        model: &MirrorModel,
        pol: PolSelect,
        t: ThermoPoint,
        method: Method,
    ) -> Result<EtaResult, CasimirError> {
        model.validate()?;
        let tau = t.tau();
        match method {
            Method::Matsubara => {
                let s = self.matsubara_sum(kind, model, pol, tau)?;
                let c = kind.matsubara_prefactor();
                Ok(EtaResult {
                    eta0: 0.0,
                    eta_t: c * s.value,
                    err: c.abs() * s.err_estimate,
                    method,
                })
            }
            Method::Resummed => {
                let z = self.zero_temperature_integral(kind, model, pol)?;
                let s = self.thermal_series(kind, model, pol, tau)?;
                let c = kind.zero_prefactor();
                Ok(EtaResult {
                    eta0: c * z.value,
                    eta_t: 2.0 * c * s.value,
                    err: c.abs() * (z.err_estimate + 2.0 * s.err_estimate),
                    method,
                })
            }
        }
    }

    /// η_F = F/F_ideal(T = 0).
    pub fn eta_f(
        &self,
        model: &MirrorModel,
        pol: PolSelect,
        t: ThermoPoint,
        method: Method,
    ) -> Result<EtaResult, CasimirError> {
        self.eta_generic(KernelKind::Force, model, pol, t, method)
    }

    /// η_E = F_free/F_free,ideal(T = 0).
    pub fn eta_e(
        &self,
        model: &MirrorModel,
        pol: PolSelect,
        t: ThermoPoint,
        method: Method,
    ) -> Result<EtaResult, CasimirError> {
        self.eta_generic(KernelKind::Energy, model, pol, t, method)
    }

    /// Zero-temperature part ∝ ∫₀^∞ K for the force (`Force`) or free energy.
    pub fn eta_zero(&self, kind: KernelKind, model: &MirrorModel, pol: PolSelect) -> Result<f64, CasimirError> {
        model.validate()?;
        let z = self.zero_temperature_integral(kind, model, pol)?;
        Ok(kind.zero_prefactor() * z.value)
    }

    /// η_F obtained from the free energy, η_F = η_E − (1/3)∂η_E/∂ln L.
    ///
    /// Changing L at fixed T and material rescales τ, α_P and g together, so
    /// the derivative is a central difference in that common factor.
    pub fn eta_f_from_free_energy(
        &self,
        model: &MirrorModel,
        pol: PolSelect,
        t: ThermoPoint,
        method: Method,
    ) -> Result<QuadResult, CasimirError> {
        let e = |lambda: f64| -> Result<EtaResult, CasimirError> {
            let m = model.scaled(lambda);
            self.eta_e(&m, pol, ThermoPoint::new(t.tau() * lambda)?, method)
        };
        let e0 = e(1.0)?;
        let ep = e(1.0 + SCALE_STEP)?;
        let em = e(1.0 - SCALE_STEP)?;
        let d = (ep.total() - em.total()) / (2.0 * SCALE_STEP);
        let trunc = (ep.total() - 2.0 * e0.total() + em.total()).abs() / SCALE_STEP;
        Ok(QuadResult {
            value: e0.total() - d / 3.0,
            err_estimate: e0.err + (ep.err + em.err) / (6.0 * SCALE_STEP) + trunc * SCALE_STEP,
            evals: 3,
            converged: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(tau: f64) -> ThermoPoint {
        ThermoPoint::new(tau).unwrap()
    }

    #[test]
    fn ideal_zero_temperature_normalization() {
        let e = Engine::default();
        let f = e.eta_zero(KernelKind::Force, &MirrorModel::Ideal, PolSelect::Both).unwrap();
        assert!((f - 1.0).abs() < 1e-10, "{f}");
        let en = e.eta_zero(KernelKind::Energy, &MirrorModel::Ideal, PolSelect::Both).unwrap();
        assert!((en - 1.0).abs() < 1e-10, "{en}");
    }

    #[test]
    fn ideal_force_two_routes_agree() {
        let e = Engine::default();
        for tau in [0.2, 1.0] {
            let m = e.eta_f(&MirrorModel::Ideal, PolSelect::Both, tp(tau), Method::Matsubara).unwrap();
            let r = e.eta_f(&MirrorModel::Ideal, PolSelect::Both, tp(tau), Method::Resummed).unwrap();
            assert!((m.total() - r.total()).abs() < 1e-9, "{tau}: {m:?} {r:?}");
        }
    }
}
