//! Run configuration: a flat JSON file whose values are overridden by flags.

use casthermo::brownian::Cutoff;
use casthermo::casimir::{Accuracy, Engine, Method, PolSelect};
use casthermo::mirror::{MirrorModel, DEFAULT_G, DEFAULT_LAMBDA_RATIO};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Outer relative tolerance of the default engine; `rel_tol` rescales all
/// tolerances by rel_tol / this.
pub const BASE_REL_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Ideal,
    Plasma,
    Drude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PolName {
    Te,
    Tm,
    Both,
}

impl PolName {
    pub fn select(self) -> PolSelect {
        match self {
            PolName::Te => PolSelect::TE,
            PolName::Tm => PolSelect::TM,
            PolName::Both => PolSelect::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Matsubara,
    Resummed,
    #[default]
    Auto,
}

impl MethodName {
    pub fn resolve(self, tau: f64) -> Method {
        match self {
            MethodName::Matsubara => Method::Matsubara,
            MethodName::Resummed => Method::Resummed,
            MethodName::Auto => Method::auto(tau),
        }
    }
}

/// Cutoff ratio w = ω_c/γ; the string "inf" selects the ohmic case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutoffValue {
    Finite(f64),
    Named(InfName),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfName {
    Inf,
}

impl CutoffValue {
    pub fn cutoff(self) -> Cutoff {
        match self {
            CutoffValue::Finite(w) => Cutoff::Finite(w),
            CutoffValue::Named(InfName::Inf) => Cutoff::Infinite,
        }
    }

    pub fn label(self) -> String {
        match self {
            CutoffValue::Finite(w) => format!("w{w}"),
            CutoffValue::Named(InfName::Inf) => "inf".to_string(),
        }
    }
}

impl std::str::FromStr for CutoffValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(CutoffValue::Named(InfName::Inf));
        }
        s.parse::<f64>()
            .map(CutoffValue::Finite)
            .map_err(|_| format!("cutoff must be a number or \"inf\", got {s:?}"))
    }
}

/// Every key is optional; absent keys take the command's default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: Option<ModelName>,
    pub pol: Option<PolName>,
    pub alpha_p: Option<f64>,
    pub lambda_ratio: Option<f64>,
    pub g: Option<f64>,
    pub g_values: Option<Vec<f64>>,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub points: Option<usize>,
    pub log: Option<bool>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub cutoffs: Option<Vec<CutoffValue>>,
    pub method: Option<MethodName>,
    pub rel_tol: Option<f64>,
    pub criteria: Option<Vec<u32>>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields of `other` that are set replace those of `self`.
    pub fn overlay(self, other: RunConfig) -> RunConfig {
        macro_rules! pick {
            ($($f:ident),*) => { RunConfig { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            model, pol, alpha_p, lambda_ratio, g, g_values, tau_min, tau_max, points, log, theta_min, theta_max,
            cutoffs, method, rel_tol, criteria, threads, out
        )
    }

    /// Fills every unset field with the given command defaults.
    pub fn with_defaults(self, defaults: RunConfig) -> RunConfig {
        defaults.overlay(self)
    }

    pub fn alpha_p(&self) -> Result<f64, CliError> {
        match (self.alpha_p, self.lambda_ratio) {
            (Some(a), None) => positive("alpha_p", a),
            (None, Some(r)) => Ok(2.0 * PI / positive("lambda_ratio", r)?),
            (None, None) => Ok(2.0 * PI / DEFAULT_LAMBDA_RATIO),
            (Some(a), Some(r)) => {
                if (a - 2.0 * PI / r).abs() <= 1e-12 * a.abs() {
                    Ok(a)
                } else {
                    Err(CliError::Usage(format!(
                        "alpha_p = {a} and lambda_ratio = {r} disagree (alpha_p = 2 pi / lambda_ratio)"
                    )))
                }
            }
        }
    }

    pub fn g(&self) -> Result<f64, CliError> {
        positive("g", self.g.unwrap_or(DEFAULT_G))
    }

    pub fn mirror(&self, model: ModelName) -> Result<MirrorModel, CliError> {
        let m = match model {
            ModelName::Ideal => MirrorModel::Ideal,
            ModelName::Plasma => MirrorModel::Plasma { alpha_p: self.alpha_p()? },
            ModelName::Drude => MirrorModel::Drude {
                alpha_p: self.alpha_p()?,
                g: self.g()?,
            },
        };
        m.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(m)
    }

    pub fn engine(&self) -> Result<Engine, CliError> {
        let rel = positive("rel_tol", self.rel_tol.unwrap_or(BASE_REL_TOL))?;
        Ok(Engine::new(Accuracy::default().scaled(rel / BASE_REL_TOL)))
    }

    pub fn method(&self) -> MethodName {
        self.method.unwrap_or_default()
    }

    pub fn tau_grid(&self) -> Result<Vec<f64>, CliError> {
        grid("tau", self.tau_min, self.tau_max, self.points, self.log.unwrap_or(true))
    }

    pub fn theta_grid(&self) -> Result<Vec<f64>, CliError> {
        grid("theta", self.theta_min, self.theta_max, self.points, self.log.unwrap_or(true))
    }

    pub fn threads(&self) -> Result<Option<usize>, CliError> {
        match self.threads {
            Some(0) => Err(CliError::Usage("threads must be positive".into())),
            t => Ok(t),
        }
    }

    /// Canonical JSON of the settings that affect results; `threads` and
    /// `out` are left out so that they do not change the output bytes.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.threads = None;
        c.out = None;
        serde_json::to_string(&c).expect("config serializes")
    }

    pub fn hash(&self, command: &str) -> String {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update([0u8]);
        h.update(self.canonical_json().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{name} must be positive and finite, got {v}")))
    }
}

fn grid(name: &str, min: Option<f64>, max: Option<f64>, points: Option<usize>, log: bool) -> Result<Vec<f64>, CliError> {
    let (Some(lo), Some(hi), Some(n)) = (min, max, points) else {
        return Err(CliError::Usage(format!("{name} grid needs min, max and points")));
    };
    let lo = positive(&format!("{name}_min"), lo)?;
    let hi = positive(&format!("{name}_max"), hi)?;
    if lo >= hi {
        return Err(CliError::Usage(format!("{name}_min = {lo} must be below {name}_max = {hi}")));
    }
    if n < 2 {
        return Err(CliError::Usage(format!("{name} grid needs at least 2 points, got {n}")));
    }
    let step = |k: usize| k as f64 / (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            if k == n - 1 {
                hi
            } else if log {
                lo * (hi / lo).powf(step(k))
            } else {
                lo + (hi - lo) * step(k)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = RunConfig {
            g: Some(0.5),
            points: Some(3),
            ..Default::default()
        };
        let flags = RunConfig {
            g: Some(0.25),
            ..Default::default()
        };
        let c = file.overlay(flags);
        assert_eq!(c.g, Some(0.25));
        assert_eq!(c.points, Some(3));
    }

    #[test]
    fn grid_validation() {
        assert!(grid("tau", Some(1.0), Some(1.0), Some(3), true).is_err());
        assert!(grid("tau", Some(0.0), Some(1.0), Some(3), false).is_err());
        assert!(grid("tau", Some(0.1), Some(1.0), Some(1), true).is_err());
        let g = grid("tau", Some(0.1), Some(10.0), Some(3), true).unwrap();
        assert!((g[1] - 1.0).abs() < 1e-15 && g[2] == 10.0);
        let g = grid("tau", Some(1.0), Some(2.0), Some(3), false).unwrap();
        assert_eq!(g, vec![1.0, 1.5, 2.0]);
    }

    #[test]
    fn alpha_from_lambda_ratio() {
        let c = RunConfig {
            lambda_ratio: Some(0.136),
            ..Default::default()
        };
        assert!((c.alpha_p().unwrap() - 46.2).abs() < 0.01);
        let bad = RunConfig {
            lambda_ratio: Some(0.136),
            alpha_p: Some(10.0),
            ..Default::default()
        };
        assert!(bad.alpha_p().is_err());
    }

    #[test]
    fn hash_ignores_threads_and_out() {
        let a = RunConfig {
            threads: Some(1),
            ..Default::default()
        };
        let b = RunConfig {
            threads: Some(8),
            out: Some("x.csv".into()),
            ..Default::default()
        };
        assert_eq!(a.hash("casimir-force"), b.hash("casimir-force"));
        assert_ne!(a.hash("casimir-force"), a.hash("delta"));
    }

    #[test]
    fn cutoff_parsing() {
        let c: Vec<CutoffValue> = serde_json::from_str(r#"["inf", 0.1]"#).unwrap();
        assert_eq!(c[0].cutoff(), Cutoff::Infinite);
        assert_eq!(c[1].cutoff(), Cutoff::Finite(0.1));
        assert_eq!("INF".parse::<CutoffValue>().unwrap().label(), "inf");
    }
}
