use casthermo::brownian::{self, BrownianParams};
use casthermo::casimir::{delta_clp_grid, Engine, KernelKind, Method, PolSelect, Relaxation, ThermoPoint};
use casthermo::mirror::MirrorModel;
use casthermo::validation::{self, CRITERIA};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

use crate::config::{CutoffValue, InfName, ModelName, PolName, RunConfig};
use crate::output::{num, Table};
use crate::CliError;

fn numerical(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

fn point(tau: f64) -> Result<ThermoPoint, CliError> {
    ThermoPoint::new(tau).map_err(|e| CliError::Usage(e.to_string()))
}

fn method_label(m: Method) -> &'static str {
    match m {
        Method::Matsubara => "matsubara",
        Method::Resummed => "resummed",
    }
}

pub fn brownian_entropy(cfg: RunConfig) -> Result<(), CliError> {
    let cfg = cfg.with_defaults(RunConfig {
        theta_min: Some(0.01),
        theta_max: Some(100.0),
        points: Some(81),
        cutoffs: Some(vec![CutoffValue::Named(InfName::Inf)]),
        ..Default::default()
    });
    let thetas = cfg.theta_grid()?;
    let cutoffs = cfg.cutoffs.clone().unwrap_or_default();
    if cutoffs.is_empty() {
        return Err(CliError::Usage("at least one cutoff is required".into()));
    }
    for c in &cutoffs {
        if let CutoffValue::Finite(w) = c {
            if !(*w > 0.0 && w.is_finite()) {
                return Err(CliError::Usage(format!("cutoff must be positive, got {w}")));
            }
        }
    }
    let rows: Vec<Vec<f64>> = thetas
        .par_iter()
        .map(|&th| {
            let mut row = vec![th, 1.0 / th];
            for c in &cutoffs {
                let p = BrownianParams::new(th, c.cutoff(), 1.0).map_err(numerical)?;
                row.push(brownian::entropy(&p).map_err(numerical)?);
            }
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    let mut t = Table::new("brownian-entropy", &cfg);
    let names: Vec<String> = ["theta".to_string(), "inv_theta".to_string()]
        .into_iter()
        .chain(cutoffs.iter().map(|c| format!("s_minus_s0_{}", c.label())))
        .collect();
    t.columns(&names.iter().map(String::as_str).collect::<Vec<_>>());
    for r in rows {
        t.numbers(&r);
    }
    t.emit(cfg.out.as_deref())
}

/// Thermal part η^T with the representation chosen for τ.
fn thermal(e: &Engine, m: &MirrorModel, pol: PolSelect, tau: f64, method: Method) -> Result<(f64, f64), CliError> {
    let r = e.eta_f(m, pol, point(tau)?, method).map_err(numerical)?;
    match method {
        Method::Resummed => Ok((r.eta_t, r.eta0)),
        Method::Matsubara => {
            let z = e.eta_zero(KernelKind::Force, m, pol).map_err(numerical)?;
            Ok((r.total() - z, z))
        }
    }
}

pub fn casimir_force(cfg: RunConfig) -> Result<(), CliError> {
    let cfg = cfg.with_defaults(RunConfig {
        tau_min: Some(0.01),
        tau_max: Some(2.0),
        points: Some(41),
        ..Default::default()
    });
    let taus = cfg.tau_grid()?;
    let engine = cfg.engine()?;
    let models = match cfg.model {
        Some(m) => vec![m],
        None => vec![ModelName::Plasma, ModelName::Drude],
    };
    let pols = match cfg.pol {
        Some(p) => vec![p],
        None => vec![PolName::Te, PolName::Tm],
    };
    let mut t = Table::new("casimir-force", &cfg);
    for &model in &models {
        let m = cfg.mirror(model)?;
        for &pol in &pols {
            let sel = pol.select();
            let eta0 = engine.eta_zero(KernelKind::Force, &m, sel).map_err(numerical)?;
            let rows: Vec<Vec<String>> = taus
                .par_iter()
                .map(|&tau| {
                    let method = cfg.method().resolve(tau);
                    let r = engine.eta_f(&m, sel, point(tau)?, method).map_err(numerical)?;
                    let (z, thermal) = match method {
                        Method::Resummed => (r.eta0, r.eta_t),
                        Method::Matsubara => (eta0, r.total() - eta0),
                    };
                    Ok(vec![
                        num(tau),
                        num(z),
                        num(thermal),
                        num(r.total()),
                        num(r.err),
                        method_label(method).to_string(),
                    ])
                })
                .collect::<Result<_, CliError>>()?;
            t.comment(&format!("block model={} pol={}", model_label(model), pol_label(pol)));
            t.columns(&["tau", "eta0", "etaT", "eta_total", "err", "method"]);
            for r in rows {
                t.row(&r);
            }
        }
    }
    t.emit(cfg.out.as_deref())
}

fn model_label(m: ModelName) -> &'static str {
    match m {
        ModelName::Ideal => "ideal",
        ModelName::Plasma => "plasma",
        ModelName::Drude => "drude",
    }
}

fn pol_label(p: PolName) -> &'static str {
    match p {
        PolName::Te => "te",
        PolName::Tm => "tm",
        PolName::Both => "both",
    }
}

pub fn casimir_entropy(cfg: RunConfig) -> Result<(), CliError> {
    let default_gs = match cfg.g {
        Some(g) => vec![g],
        None => vec![0.01, 0.1, 1.0, 10.0, 100.0, 1000.0],
    };
    let cfg = cfg.with_defaults(RunConfig {
        tau_min: Some(1e-3),
        tau_max: Some(1.0),
        points: Some(13),
        model: Some(ModelName::Drude),
        pol: Some(PolName::Both),
        g_values: Some(default_gs),
        ..Default::default()
    });
    let taus = cfg.tau_grid()?;
    let engine = cfg.engine()?;
    let model = cfg.model.unwrap_or(ModelName::Drude);
    let sel = cfg.pol.unwrap_or(PolName::Both).select();
    let mirrors: Vec<(String, MirrorModel)> = match model {
        ModelName::Drude => {
            let gs = cfg.g_values.clone().unwrap_or_default();
            if gs.is_empty() {
                return Err(CliError::Usage("g_values must not be empty".into()));
            }
            gs.iter()
                .map(|&g| {
                    let c = RunConfig { g: Some(g), ..cfg.clone() };
                    Ok((format!("s_g{g}"), c.mirror(ModelName::Drude)?))
                })
                .collect::<Result<_, CliError>>()?
        }
        other => vec![("s".to_string(), cfg.mirror(other)?)],
    };
    let jobs: Vec<(usize, usize)> = (0..taus.len())
        .flat_map(|i| (0..mirrors.len()).map(move |j| (i, j)))
        .collect();
    let values: Vec<f64> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let tau = taus[i];
            let method = cfg.method().resolve(tau);
            let r = engine
                .entropy_with(&mirrors[j].1, sel, point(tau)?, method)
                .map_err(numerical)?;
            Ok(r.value)
        })
        .collect::<Result<_, CliError>>()?;
    let mut t = Table::new("casimir-entropy", &cfg);
    let mut names = vec!["tau"];
    names.extend(mirrors.iter().map(|(n, _)| n.as_str()));
    t.columns(&names);
    for (i, &tau) in taus.iter().enumerate() {
        let mut row = vec![tau];
        row.extend_from_slice(&values[i * mirrors.len()..(i + 1) * mirrors.len()]);
        t.numbers(&row);
    }
    t.emit(cfg.out.as_deref())
}

/// Grids of the Drude − plasma TE comparison: ξ/γ and cκ/ω_P.
const GRID_X: (f64, f64, usize) = (1e-2, 1e3, 26);
const GRID_U: (f64, f64, usize) = (1e-3, 10.0, 21);
const CURVE_X: (f64, f64, usize) = (1e-2, 1e4, 61);
const CURVE_G: [f64; 2] = [1e-3, 1e-1];

pub fn delta(cfg: RunConfig) -> Result<(), CliError> {
    let cfg = cfg.with_defaults(RunConfig {
        tau_min: Some(1e-9),
        tau_max: Some(5.0),
        points: Some(29),
        ..Default::default()
    });
    let taus = cfg.tau_grid()?;
    let engine = cfg.engine()?;
    let alpha_p = cfg.alpha_p()?;
    let g = cfg.g()?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;

    let xs = validation::log_grid(GRID_X.0, GRID_X.1, GRID_X.2);
    let us = validation::log_grid(GRID_U.0, GRID_U.1, GRID_U.2);
    let m = delta_clp_grid(alpha_p, g, &xs, &us).map_err(numerical)?;
    let mut t = Table::new("delta", &cfg);
    t.comment("-(kappa L)^2 (f_TE(Drude) - f_TE(plasma)) on x = xi/gamma, u = c kappa/omega_P");
    t.columns(&["x", "u", "value"]);
    for (i, &x) in xs.iter().enumerate() {
        for (j, &u) in us.iter().enumerate() {
            t.numbers(&[x, u, m[i][j]]);
        }
    }
    write(&t, &dir.join("delta_grid.csv"))?;

    let cx = validation::log_grid(CURVE_X.0, CURVE_X.1, CURVE_X.2);
    let relax: Vec<Relaxation> = CURVE_G
        .iter()
        .map(|&g| Relaxation::Finite(g))
        .chain([Relaxation::ZeroLimit])
        .collect();
    let curves: Vec<Vec<f64>> = cx
        .par_iter()
        .map(|&x| {
            let mut row = vec![x];
            for &r in &relax {
                row.push(engine.delta_phi_te(alpha_p, r, x).map_err(numerical)?);
            }
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    let mut t = Table::new("delta", &cfg);
    t.comment("-(Phi_TE(Drude) - Phi_TE(plasma)) against x = xi/gamma");
    t.columns(&["x", "g0.001", "g0.1", "g_to_0"]);
    for r in curves {
        t.numbers(&r);
    }
    write(&t, &dir.join("delta_curves.csv"))?;

    let drude = cfg.mirror(ModelName::Drude)?;
    let plasma = cfg.mirror(ModelName::Plasma)?;
    let rows: Vec<Vec<String>> = taus
        .par_iter()
        .map(|&tau| {
            let method = cfg.method().resolve(tau);
            let (d, _) = thermal(&engine, &drude, PolSelect::TE, tau, method)?;
            let (p, _) = thermal(&engine, &plasma, PolSelect::TE, tau, method)?;
            Ok(vec![num(tau), num((d - p).abs()), num(-d), num(p), method_label(method).to_string()])
        })
        .collect::<Result<_, CliError>>()?;
    let mut t = Table::new("delta", &cfg);
    t.comment("TE thermal corrections to eta_F");
    t.columns(&["tau", "abs_delta_eta_t", "minus_eta_t_drude", "eta_t_plasma", "method"]);
    for r in rows {
        t.row(&r);
    }
    write(&t, &dir.join("delta_regimes.csv"))
}

fn write(t: &Table, path: &Path) -> Result<(), CliError> {
    t.emit(Some(path))
}

pub fn validate(cfg: RunConfig) -> Result<(), CliError> {
    let engine = cfg.engine()?;
    let ids: Vec<u32> = match &cfg.criteria {
        Some(ids) => ids.clone(),
        None => CRITERIA.iter().map(|(id, _)| *id).collect(),
    };
    for id in &ids {
        if !CRITERIA.iter().any(|(i, _)| i == id) {
            return Err(CliError::Usage(format!("no criterion with id {id}")));
        }
    }
    let mut failed = Vec::new();
    for id in ids {
        match validation::run(id, &engine) {
            Ok(o) => {
                println!("{o}");
                if !o.passed() {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("FAIL [{id}] error: {e}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("all criteria passed");
        Ok(())
    } else {
        Err(CliError::Numerical(format!("criteria {failed:?} failed")))
    }
}

pub struct Physical {
    pub length: f64,
    pub temperature: f64,
    pub sigma0: f64,
    pub lambda_p: f64,
}

/// ħ, k_B, c and ε₀ in SI units.
const HBAR: f64 = 1.054_571_817e-34;
const K_B: f64 = 1.380_649e-23;
const C: f64 = 299_792_458.0;
const EPS0: f64 = 8.854_187_812_8e-12;

/// (τ, α_P, g) from L, T, σ₀ and λ_P.
pub fn to_dimensionless(p: &Physical) -> (f64, f64, f64) {
    let tau = K_B * p.temperature * p.length / (HBAR * C);
    let omega_p = 2.0 * std::f64::consts::PI * C / p.lambda_p;
    let gamma = EPS0 * omega_p * omega_p / p.sigma0;
    (tau, omega_p * p.length / C, gamma * p.length / C)
}

pub fn convert_units(p: Physical, out: Option<&Path>) -> Result<(), CliError> {
    for (name, v) in [
        ("length", p.length),
        ("temperature", p.temperature),
        ("sigma0", p.sigma0),
        ("lambda-p", p.lambda_p),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Usage(format!("{name} must be positive and finite, got {v}")));
        }
    }
    let (tau, alpha_p, g) = to_dimensionless(&p);
    let cfg = RunConfig {
        tau_min: Some(tau),
        alpha_p: Some(alpha_p),
        g: Some(g),
        ..Default::default()
    };
    let mut t = Table::new("convert-units", &cfg);
    t.columns(&["length_m", "temperature_k", "sigma0", "lambda_p_m", "tau", "alpha_p", "g"]);
    t.numbers(&[p.length, p.temperature, p.sigma0, p.lambda_p, tau, alpha_p, g]);
    t.emit(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gold_at_one_micron() {
        let (tau, alpha_p, g) = to_dimensionless(&Physical {
            length: 1e-6,
            temperature: 300.0,
            sigma0: 4.52e7,
            lambda_p: 136e-9,
        });
        assert!((alpha_p - 2.0 * std::f64::consts::PI / 0.136).abs() < 1e-9);
        assert!((g - 0.125).abs() < 0.002, "{g}");
        // k_B·300 K·1 µm/(ħc) = 0.1309...
        assert!((tau - 0.130_95).abs() < 1e-4, "{tau}");
    }
}
