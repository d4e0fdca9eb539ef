//! Drude minus plasma differences for the TE mode.

use super::kernels::KernelKind;
use super::{CasimirError, Engine, Method, PolSelect, ThermoPoint};
use crate::mirror::{closed_loop_raw, MirrorError, MirrorModel, Polarization};
use crate::numkit::QuadResult;
use std::f64::consts::PI;

/// Relaxation frequency of the Drude curve in [`Engine::delta_phi_te`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Relaxation {
    /// g = γL/c > 0
    Finite(f64),
    /// γ → 0 at fixed ξ/γ: the κ-integral starts at 0.
    ZeroLimit,
}

impl Engine {
    /// η_F^T(Drude) − η_F^T(plasma), TE mode, same α_P and τ. The thermal
    /// parts come from the resummed series below τ = 0.05 and from the
    /// Matsubara total minus the zero-temperature part above.
    pub fn delta_eta_ft(&self, alpha_p: f64, g: f64, t: ThermoPoint) -> Result<QuadResult, CasimirError> {
        self.delta_eta_ft_with(alpha_p, g, t, Method::auto(t.tau()))
    }

    pub fn delta_eta_ft_with(
        &self,
        alpha_p: f64,
        g: f64,
        t: ThermoPoint,
        method: Method,
    ) -> Result<QuadResult, CasimirError> {
        let drude = MirrorModel::drude(alpha_p, g)?;
        let plasma = MirrorModel::plasma(alpha_p)?;
        let thermal = |m: &MirrorModel| -> Result<(f64, f64), CasimirError> {
            let r = self.eta_f(m, PolSelect::TE, t, method)?;
            match method {
                Method::Resummed => Ok((r.eta_t, r.err)),
                Method::Matsubara => {
                    let z = self.eta_zero(KernelKind::Force, m, PolSelect::TE)?;
                    Ok((r.total() - z, r.err + self.acc.outer.tolerance(z)))
                }
            }
        };
        let (d, de) = thermal(&drude)?;
        let (p, pe) = thermal(&plasma)?;
        Ok(QuadResult {
            value: d - p,
            err_estimate: de + pe,
            evals: 2,
            converged: true,
        })
    }

    /// −[Φ_TE^Drude − Φ_TE^plasma] at ξ/γ = x ≥ 0.
    pub fn delta_phi_te(&self, alpha_p: f64, relax: Relaxation, x: f64) -> Result<f64, CasimirError> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(CasimirError::Domain(format!("x = ξ/γ must be finite and non-negative, got {x}")));
        }
        let plasma = MirrorModel::plasma(alpha_p)?;
        let drude = match relax {
            Relaxation::Finite(g) => {
                let drude = MirrorModel::drude(alpha_p, g)?;
                let y = g * x;
                let d = self.kernel_single(KernelKind::Force, &drude, Polarization::TE, y)?.value;
                let p = self.kernel_single(KernelKind::Force, &plasma, Polarization::TE, y)?.value;
                return Ok(-(d - p));
            }
            // q = α_P²x/(x + 1) is the Drude q at y = x with g = 1.
            Relaxation::ZeroLimit => MirrorModel::drude(alpha_p, 1.0)?,
        };
        let d = self.kernel_from(KernelKind::Force, &drude, Polarization::TE, x, 0.0)?.value;
        let p = self.kernel_single(KernelKind::Force, &plasma, Polarization::TE, 0.0)?.value;
        Ok(-(d - p))
    }
}

/// γ → 0 value of η_F^T(Drude) − η_F^T(plasma): −(120/π³)·τ·Φ_TE^plasma(0).
pub fn delta_eta_ft_classical(alpha_p: f64, t: ThermoPoint) -> Result<f64, CasimirError> {
    let plasma = MirrorModel::plasma(alpha_p)?;
    let phi0 = Engine::default().kernel(KernelKind::Force, &plasma, PolSelect::TE, 0.0)?;
    Ok(-120.0 / PI.powi(3) * t.tau() * phi0)
}

/// −v²[f_TE^Drude − f_TE^plasma] on the grid y = g·x, v = α_P·u; rows follow
/// `x_grid`, columns `u_grid`.
pub fn delta_clp_grid(alpha_p: f64, g: f64, x_grid: &[f64], u_grid: &[f64]) -> Result<Vec<Vec<f64>>, CasimirError> {
    let drude = MirrorModel::drude(alpha_p, g)?;
    let plasma = MirrorModel::plasma(alpha_p)?;
    let check = |what: &'static str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(MirrorError::Domain {
                what,
                domain: "positive and finite",
                value: v,
            })
        }
    };
    for &x in x_grid {
        check("grid value x", x)?;
    }
    for &u in u_grid {
        check("grid value u", u)?;
    }
    Ok(x_grid
        .iter()
        .map(|&x| {
            let y = g * x;
            u_grid
                .iter()
                .map(|&u| {
                    let v = alpha_p * u;
                    let fd = closed_loop_raw(&drude, Polarization::TE, y, v);
                    let fp = closed_loop_raw(&plasma, Polarization::TE, y, v);
                    -v * v * (fd - fp)
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spot_value() {
        // direct evaluation of r = (s − v)/(s + v), f = r²/(e^{2v} − r²)
        let (a, g, x, u) = (46.2f64, 0.125f64, 1.0f64, 0.5f64);
        let y = g * x;
        let v = a * u;
        let f = |eps_minus_1: f64| {
            let s = (v * v + y * y * eps_minus_1).sqrt();
            let r = (s - v) / (s + v);
            r * r / ((2.0 * v).exp() - r * r)
        };
        let expected = -v * v * (f(a * a / (y * (y + g))) - f(a * a / (y * y)));
        let m = delta_clp_grid(a, g, &[x], &[u]).unwrap();
        assert!((m[0][0] - expected).abs() <= 1e-12 * expected.abs(), "{} vs {expected}", m[0][0]);
    }

    #[test]
    fn zero_frequency_gives_plasma_kernel() {
        let e = Engine::default();
        let p = e
            .kernel(KernelKind::Force, &MirrorModel::plasma(46.2).unwrap(), PolSelect::TE, 0.0)
            .unwrap();
        for relax in [Relaxation::Finite(0.125), Relaxation::ZeroLimit] {
            let d = e.delta_phi_te(46.2, relax, 0.0).unwrap();
            assert_eq!(d, p);
        }
    }
}
