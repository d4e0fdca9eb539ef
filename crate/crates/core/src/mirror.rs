//! Mirror optics on the imaginary frequency axis in dimensionless form:
//! y = ξL/c, v = κL, α_P = ω_P L/c, g = γL/c.
//!
//! Everything is expressed through q = y²(ε(iy) − 1), which stays finite at
//! y = 0 and carries the difference between the models there: q → α_P² for
//! the plasma model and q → 0 for the Drude model.

use std::f64::consts::PI;
use thiserror::Error;

/// λ_P/L used for the default mirrors.
pub const DEFAULT_LAMBDA_RATIO: f64 = 0.136;
/// α_P = 2π/(λ_P/L) for the default mirrors.
pub const DEFAULT_ALPHA_P: f64 = 2.0 * PI / DEFAULT_LAMBDA_RATIO;
/// γL/c for the default Drude mirrors.
pub const DEFAULT_G: f64 = 0.125;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MirrorError {
    #[error("invalid mirror parameter: {0}")]
    Parameter(String),
    #[error("{what} requires {domain}, got {value}")]
    Domain {
        what: &'static str,
        domain: &'static str,
        value: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MirrorModel {
    Ideal,
    Plasma { alpha_p: f64 },
    Drude { alpha_p: f64, g: f64 },
}

fn positive(name: &str, x: f64) -> Result<f64, MirrorError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(MirrorError::Parameter(format!("{name} must be positive and finite, got {x}")))
    }
}

impl MirrorModel {
    pub fn plasma(alpha_p: f64) -> Result<Self, MirrorError> {
        Ok(MirrorModel::Plasma {
            alpha_p: positive("alpha_p", alpha_p)?,
        })
    }

    pub fn drude(alpha_p: f64, g: f64) -> Result<Self, MirrorError> {
        Ok(MirrorModel::Drude {
            alpha_p: positive("alpha_p", alpha_p)?,
            g: positive("g", g)?,
        })
    }

    pub fn alpha_from_lambda_ratio(ratio: f64) -> Result<f64, MirrorError> {
        Ok(2.0 * PI / positive("lambda_ratio", ratio)?)
    }

    pub fn validate(&self) -> Result<(), MirrorError> {
        match *self {
            MirrorModel::Ideal => Ok(()),
            MirrorModel::Plasma { alpha_p } => Self::plasma(alpha_p).map(|_| ()),
            MirrorModel::Drude { alpha_p, g } => Self::drude(alpha_p, g).map(|_| ()),
        }
    }

    pub fn alpha_p(&self) -> Option<f64> {
        match *self {
            MirrorModel::Ideal => None,
            MirrorModel::Plasma { alpha_p } | MirrorModel::Drude { alpha_p, .. } => Some(alpha_p),
        }
    }

    pub fn g(&self) -> Option<f64> {
        match *self {
            MirrorModel::Drude { g, .. } => Some(g),
            _ => None,
        }
    }

    /// λ_P/L = 2π/α_P.
    pub fn lambda_ratio(&self) -> Option<f64> {
        self.alpha_p().map(|a| 2.0 * PI / a)
    }

    /// Dimensionless dc conductivity σ₀L/c = α_P²/g (Drude only).
    pub fn s0(&self) -> Option<f64> {
        match *self {
            MirrorModel::Drude { alpha_p, g } => Some(alpha_p * alpha_p / g),
            _ => None,
        }
    }

    /// The same mirrors seen at separation λL: α_P and g scale with L.
    pub fn scaled(&self, lambda: f64) -> Self {
        match *self {
            MirrorModel::Ideal => MirrorModel::Ideal,
            MirrorModel::Plasma { alpha_p } => MirrorModel::Plasma {
                alpha_p: alpha_p * lambda,
            },
            MirrorModel::Drude { alpha_p, g } => MirrorModel::Drude {
                alpha_p: alpha_p * lambda,
                g: g * lambda,
            },
        }
    }

    /// q = y²(ε(iy) − 1), including the y → 0 limit; +∞ for ideal mirrors.
    pub fn q(&self, y: f64) -> f64 {
        match *self {
            MirrorModel::Ideal => f64::INFINITY,
            MirrorModel::Plasma { alpha_p } => alpha_p * alpha_p,
            MirrorModel::Drude { alpha_p, g } => alpha_p * alpha_p * y / (y + g),
        }
    }

    /// 1/ε(iy), exactly 0 at y = 0 for both dispersive models.
    pub fn inv_eps(&self, y: f64) -> f64 {
        match *self {
            MirrorModel::Ideal => 0.0,
            MirrorModel::Plasma { alpha_p } => {
                let y2 = y * y;
                y2 / (y2 + alpha_p * alpha_p)
            }
            MirrorModel::Drude { alpha_p, g } => {
                let d = y * (y + g);
                d / (d + alpha_p * alpha_p)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    TE,
    TM,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TE, Polarization::TM];
}

/// A point (y, v) = (ξL/c, κL) on the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImFreqPoint {
    pub y: f64,
    pub v: f64,
}

impl ImFreqPoint {
    pub fn new(y: f64, v: f64) -> Result<Self, MirrorError> {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(MirrorError::Domain {
                what: "frequency y",
                domain: "y >= 0",
                value: y,
            });
        }
        if !(v > 0.0) || !v.is_finite() {
            return Err(MirrorError::Domain {
                what: "wave number v",
                domain: "v > 0",
                value: v,
            });
        }
        Ok(ImFreqPoint { y, v })
    }

    /// Inside the integration domain κ ≥ ξ/c.
    pub fn is_physical(&self) -> bool {
        self.v >= self.y
    }
}

/// Reflection coefficient together with 1 − r², which is computed without
/// cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub r: f64,
    pub one_minus_r2: f64,
}

/// ε(iy) for y > 0; +∞ for ideal mirrors.
pub fn eps_im(model: &MirrorModel, y: f64) -> Result<f64, MirrorError> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(MirrorError::Domain {
            what: "permittivity",
            domain: "y > 0",
            value: y,
        });
    }
    Ok(match *model {
        MirrorModel::Ideal => f64::INFINITY,
        MirrorModel::Plasma { alpha_p } => 1.0 + alpha_p * alpha_p / (y * y),
        MirrorModel::Drude { alpha_p, g } => 1.0 + alpha_p * alpha_p / (y * (y + g)),
    })
}

/// TE and TM reflection at (y, v), v > 0, without argument checks.
pub fn reflection(model: &MirrorModel, pol: Polarization, y: f64, v: f64) -> Reflection {
    if let MirrorModel::Ideal = model {
        return Reflection {
            r: match pol {
                Polarization::TE => 1.0,
                Polarization::TM => -1.0,
            },
            one_minus_r2: 0.0,
        };
    }
    let q = model.q(y);
    let s = (v * v + q).sqrt();
    match pol {
        Polarization::TE => {
            // (s - v)/(s + v) with s - v = q/(s + v)
            let sp = s + v;
            Reflection {
                r: q / (sp * sp),
                one_minus_r2: 4.0 * s * v / (sp * sp),
            }
        }
        Polarization::TM => {
            // ρ = s/(εv); r = (ρ - 1)/(ρ + 1)
            let rho = s * model.inv_eps(y) / v;
            let d = 1.0 + rho;
            Reflection {
                r: (rho - 1.0) / d,
                one_minus_r2: 4.0 * rho / (d * d),
            }
        }
    }
}

fn check_point(pt: &ImFreqPoint) -> Result<(), MirrorError> {
    ImFreqPoint::new(pt.y, pt.v).map(|_| ())
}

pub fn r_te(model: &MirrorModel, pt: &ImFreqPoint) -> Result<f64, MirrorError> {
    check_point(pt)?;
    Ok(reflection(model, Polarization::TE, pt.y, pt.v).r)
}

pub fn r_tm(model: &MirrorModel, pt: &ImFreqPoint) -> Result<f64, MirrorError> {
    check_point(pt)?;
    Ok(reflection(model, Polarization::TM, pt.y, pt.v).r)
}

/// r²e^{-2v}/(1 − r²e^{-2v}) from a precomputed reflection.
pub fn closed_loop_from(refl: Reflection, v: f64) -> f64 {
    let r2 = refl.r * refl.r;
    if r2 == 0.0 {
        return 0.0;
    }
    let e = (-2.0 * v).exp();
    r2 * e / (refl.one_minus_r2 - r2 * (-2.0 * v).exp_m1())
}

/// ln(1 − r²e^{-2v}) from a precomputed reflection.
pub fn log_loop_from(refl: Reflection, v: f64) -> f64 {
    let r2 = refl.r * refl.r;
    let x = r2 * (-2.0 * v).exp();
    if x < 0.5 {
        (-x).ln_1p()
    } else {
        (refl.one_minus_r2 - r2 * (-2.0 * v).exp_m1()).ln()
    }
}

/// Closed-loop function f_p = r²/(e^{2v} − r²), unchecked.
pub fn closed_loop_raw(model: &MirrorModel, pol: Polarization, y: f64, v: f64) -> f64 {
    closed_loop_from(reflection(model, pol, y, v), v)
}

/// ln(1 − r² e^{−2v}), unchecked.
pub fn log_loop_raw(model: &MirrorModel, pol: Polarization, y: f64, v: f64) -> f64 {
    log_loop_from(reflection(model, pol, y, v), v)
}

pub fn closed_loop(model: &MirrorModel, pol: Polarization, pt: &ImFreqPoint) -> Result<f64, MirrorError> {
    check_point(pt)?;
    Ok(closed_loop_raw(model, pol, pt.y, pt.v))
}

/// Sum of the TE and TM closed-loop functions.
pub fn closed_loop_both(model: &MirrorModel, pt: &ImFreqPoint) -> Result<f64, MirrorError> {
    check_point(pt)?;
    Ok(closed_loop_raw(model, Polarization::TE, pt.y, pt.v) + closed_loop_raw(model, Polarization::TM, pt.y, pt.v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn drude() -> MirrorModel {
        MirrorModel::drude(46.2, 0.125).unwrap()
    }

    #[test]
    fn permittivity_examples() {
        let p = MirrorModel::plasma(46.2).unwrap();
        assert_relative_eq!(eps_im(&p, 46.2).unwrap(), 2.0, max_relative = 1e-15);
        let e = eps_im(&drude(), 0.125).unwrap();
        assert_relative_eq!(e, 1.0 + 46.2f64.powi(2) / (0.125 * 0.25), max_relative = 1e-15);
        assert!(eps_im(&p, 0.0).is_err());
        assert_eq!(eps_im(&MirrorModel::Ideal, 1.0).unwrap(), f64::INFINITY);
        let y = 1e4;
        let ed = eps_im(&drude(), y).unwrap() - 1.0;
        let ep = eps_im(&p, y).unwrap() - 1.0;
        assert!((ed - ep).abs() / ep <= 0.125 / y);
    }

    #[test]
    fn te_examples() {
        let a = 46.2;
        let p = MirrorModel::plasma(a).unwrap();
        let r = r_te(&p, &ImFreqPoint::new(0.0, a).unwrap()).unwrap();
        assert_relative_eq!(r, 3.0 - 2.0 * 2f64.sqrt(), max_relative = 1e-14);
        assert_eq!(r_te(&drude(), &ImFreqPoint::new(0.0, 0.7).unwrap()).unwrap(), 0.0);
        assert_eq!(r_te(&MirrorModel::Ideal, &ImFreqPoint::new(3.0, 0.7).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn tm_examples() {
        let d = drude();
        assert_eq!(r_tm(&d, &ImFreqPoint::new(0.0, 0.5).unwrap()).unwrap(), -1.0);
        let r = r_tm(&d, &ImFreqPoint::new(1e-9, 0.5).unwrap()).unwrap();
        assert!((r * r - 1.0).abs() < 1e-6);
        // weak plasma: ε close to 1 gives r close to 0
        let weak = MirrorModel::plasma(1e-6).unwrap();
        assert!(r_tm(&weak, &ImFreqPoint::new(1.0, 1.0).unwrap()).unwrap().abs() < 1e-12);
        assert_eq!(r_tm(&MirrorModel::Ideal, &ImFreqPoint::new(1.0, 1.0).unwrap()).unwrap(), -1.0);
    }

    #[test]
    fn closed_loop_examples() {
        let pt = ImFreqPoint::new(0.0, 2f64.ln() / 2.0).unwrap();
        for pol in Polarization::BOTH {
            assert_relative_eq!(closed_loop(&MirrorModel::Ideal, pol, &pt).unwrap(), 1.0, max_relative = 1e-14);
        }
        assert_eq!(closed_loop(&drude(), Polarization::TE, &ImFreqPoint::new(0.0, 0.3).unwrap()).unwrap(), 0.0);
        let far = closed_loop(&MirrorModel::Ideal, Polarization::TE, &ImFreqPoint::new(0.0, 400.0).unwrap()).unwrap();
        assert!(far >= 0.0 && far < 1e-300);
        let both = closed_loop_both(&MirrorModel::Ideal, &pt).unwrap();
        assert_relative_eq!(both, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn noncommuting_zero_frequency_limit() {
        for g in [1e-1, 1e-3, 1e-6] {
            let d = MirrorModel::drude(46.2, g).unwrap();
            assert_eq!(reflection(&d, Polarization::TE, 0.0, 1.0).r, 0.0);
        }
        let p = MirrorModel::plasma(46.2).unwrap();
        assert!(reflection(&p, Polarization::TE, 0.0, 1.0).r > 0.9);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(MirrorModel::plasma(0.0).is_err());
        assert!(MirrorModel::drude(1.0, -1.0).is_err());
        assert!(MirrorModel::drude(f64::NAN, 1.0).is_err());
        assert!(ImFreqPoint::new(-1.0, 1.0).is_err());
        assert!(ImFreqPoint::new(1.0, 0.0).is_err());
        assert!(ImFreqPoint::new(1.0, 2.0).unwrap().is_physical());
        assert!(!ImFreqPoint::new(2.0, 1.0).unwrap().is_physical());
    }

    #[test]
    fn derived_quantities() {
        let d = drude();
        assert_relative_eq!(d.s0().unwrap(), 46.2 * 46.2 / 0.125);
        assert_relative_eq!(
            MirrorModel::plasma(DEFAULT_ALPHA_P).unwrap().lambda_ratio().unwrap(),
            0.136,
            max_relative = 1e-15
        );
        assert_eq!(d.scaled(2.0), MirrorModel::drude(92.4, 0.25).unwrap());
    }
}
