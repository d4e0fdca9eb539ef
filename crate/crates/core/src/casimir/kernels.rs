//! Frequency kernels Φ(y) and Ψ(y): the κ-integrals of the round-trip
//! functions at fixed imaginary frequency.

use super::{require, CasimirError, Engine, PolSelect};
use crate::mirror::{closed_loop_raw, log_loop_raw, MirrorModel, Polarization};
use crate::numkit::{try_integrate_semi_inf_opts, QuadResult, SemiInf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// Φ(y) = ∫_y^∞ v² f dv
    Force,
    /// Ψ(y) = ∫_y^∞ v ln(1 − r² e^{−2v}) dv
    Energy,
}

/// Points in v where the integrand bends: the TE crossover at v ≈ √q and the
/// exponential cut-off scale.
fn v_breaks(model: &MirrorModel, pol: Polarization, y: f64, lower: f64) -> Vec<f64> {
    let mut b = vec![lower + 0.5, lower + 2.0, lower + 8.0];
    if pol == Polarization::TE {
        let q = model.q(y);
        if q.is_finite() && q > 0.0 {
            let sq = q.sqrt();
            for p in [0.1 * sq, sq, 10.0 * sq] {
                if p > lower && p < lower + 40.0 {
                    b.push(p);
                }
            }
        }
    }
    b.sort_by(f64::total_cmp);
    b
}

/// Points in y where Φ and Ψ change character: for Drude mirrors the scales
/// 1/s0 and g of the TE low-frequency crossover.
pub(crate) fn y_breaks(model: &MirrorModel) -> Vec<f64> {
    let mut b = vec![0.5, 2.0, 8.0];
    if let (Some(s0), Some(g)) = (model.s0(), model.g()) {
        for k in [0.01, 0.1, 1.0, 10.0, 100.0] {
            b.push(k / s0);
        }
        for k in [0.1, 1.0, 10.0] {
            b.push(k * g);
        }
    }
    b.retain(|&x| x > 0.0 && x < 30.0);
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

impl Engine {
    pub fn kernel_single(
        &self,
        kind: KernelKind,
        model: &MirrorModel,
        pol: Polarization,
        y: f64,
    ) -> Result<QuadResult, CasimirError> {
        self.kernel_from(kind, model, pol, y, y)
    }

    /// κ-integral at frequency y taken over v ≥ `lower` instead of v ≥ y.
    pub(crate) fn kernel_from(
        &self,
        kind: KernelKind,
        model: &MirrorModel,
        pol: Polarization,
        y: f64,
        lower: f64,
    ) -> Result<QuadResult, CasimirError> {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(CasimirError::Domain(format!("frequency y must be finite and non-negative, got {y}")));
        }
        let breaks = v_breaks(model, pol, y, lower);
        let range = SemiInf {
            lower,
            scale: 0.5,
            breaks: &breaks,
        };
        let r = match kind {
            KernelKind::Force => try_integrate_semi_inf_opts(
                |v| Ok::<f64, CasimirError>(v * v * closed_loop_raw(model, pol, y, v)),
                &range,
                &self.acc.kernel,
            )?,
            KernelKind::Energy => try_integrate_semi_inf_opts(
                |v| Ok::<f64, CasimirError>(v * log_loop_raw(model, pol, y, v)),
                &range,
                &self.acc.kernel,
            )?,
        };
        require(r, || format!("{kind:?} kernel at y = {y}"))
    }

    /// Φ(y) or Ψ(y) summed over the selected polarizations.
    pub fn kernel(&self, kind: KernelKind, model: &MirrorModel, pol: PolSelect, y: f64) -> Result<f64, CasimirError> {
        model.validate()?;
        self.kernel_unchecked(kind, model, pol, y)
    }

    pub(crate) fn kernel_unchecked(
        &self,
        kind: KernelKind,
        model: &MirrorModel,
        pol: PolSelect,
        y: f64,
    ) -> Result<f64, CasimirError> {
        let mut total = 0.0;
        for &p in pol.pols() {
            total += self.kernel_single(kind, model, p, y)?.value;
        }
        Ok(total)
    }
}
