//! Casimir entropy from the temperature derivative of the free energy.

use super::{CasimirError, Engine, Method, PolSelect, ThermoPoint};
use crate::mirror::MirrorModel;
use crate::numkit::{try_derivative, QuadResult};
use std::f64::consts::PI;

/// Matsubara representation at and above this τ, resummed below.
pub const ENTROPY_METHOD_SWITCH: f64 = 0.05;

impl Engine {
    /// s = S·L²/(k_B·A) = (π²/720)·dη_E/dτ, with the representation chosen by
    /// [`Method::auto`] at the centre point.
    pub fn entropy(&self, model: &MirrorModel, pol: PolSelect, t: ThermoPoint) -> Result<QuadResult, CasimirError> {
        self.entropy_with(model, pol, t, Method::auto(t.tau()))
    }

    pub fn entropy_with(
        &self,
        model: &MirrorModel,
        pol: PolSelect,
        t: ThermoPoint,
        method: Method,
    ) -> Result<QuadResult, CasimirError> {
        model.validate()?;
        let r = try_derivative(
            |tau| Ok::<f64, CasimirError>(self.eta_e(model, pol, ThermoPoint::new(tau)?, method)?.total()),
            t.tau(),
            &self.acc.derivative,
        )?;
        let c = PI * PI / 720.0;
        Ok(QuadResult {
            value: c * r.value,
            err_estimate: c * r.err_estimate,
            ..r
        })
    }
}
