//! casthermo: parameter sweeps for the thermal Casimir effect and the damped
//! free particle, written as CSV.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use config::{CutoffValue, MethodName, ModelName, PolName, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "casthermo", version, about = "Thermal Casimir effect and damped free particle sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// (S − S₀)/k_B of the damped free particle against θ = ħβγ, one column per cutoff.
    BrownianEntropy(Common),
    /// η_F = F/F_ideal(T = 0) against τ, one block per (model, pol).
    CasimirForce(Common),
    /// Dimensionless Casimir entropy against τ, one column per g.
    CasimirEntropy(Common),
    /// Drude minus plasma TE comparison: grid, curves and thermal corrections
    /// written as delta_grid.csv, delta_curves.csv, delta_regimes.csv in --out.
    Delta(Common),
    /// Runs the acceptance criteria; exits 1 if any fails.
    Validate(Common),
    /// Converts L, T, σ₀, λ_P to (τ, α_P, g).
    ///
    /// τ = k_B·T·L/(ħc), α_P = ω_P·L/c with ω_P = 2πc/λ_P, g = γL/c with
    /// γ = ε₀ω_P²/σ₀. Defaults are the gold values σ₀ = 4.52e7 (Ωm)⁻¹ and
    /// λ_P = 136 nm.
    ConvertUnits(Units),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// JSON configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelName>,
    #[arg(long, value_enum)]
    pol: Option<PolName>,
    /// ω_P L/c.
    #[arg(long)]
    alpha_p: Option<f64>,
    /// γL/c.
    #[arg(long)]
    g: Option<f64>,
    /// Comma-separated g values for casimir-entropy.
    #[arg(long, value_delimiter = ',')]
    g_values: Option<Vec<f64>>,
    /// λ_P/L; sets α_P = 2π/(λ_P/L).
    #[arg(long)]
    lambda_ratio: Option<f64>,
    #[arg(long)]
    tau_min: Option<f64>,
    #[arg(long)]
    tau_max: Option<f64>,
    #[arg(long)]
    theta_min: Option<f64>,
    #[arg(long)]
    theta_max: Option<f64>,
    /// Comma-separated cutoff ratios ω_c/γ for brownian-entropy; "inf" for ohmic damping.
    #[arg(long, value_delimiter = ',')]
    cutoffs: Option<Vec<CutoffValue>>,
    #[arg(long)]
    points: Option<usize>,
    /// Logarithmic grid spacing (the default); --log=false for linear.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    log: Option<bool>,
    #[arg(long, value_enum)]
    method: Option<MethodName>,
    /// Relative tolerance of the frequency quadratures; the other tolerances scale with it.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Comma-separated criterion ids for validate.
    #[arg(long, value_delimiter = ',')]
    criteria: Option<Vec<u32>>,
    /// Output file (a directory for delta); stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "CASTHERMO_THREADS")]
    threads: Option<usize>,
}

impl Common {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            model: self.model,
            pol: self.pol,
            alpha_p: self.alpha_p,
            lambda_ratio: self.lambda_ratio,
            g: self.g,
            g_values: self.g_values,
            tau_min: self.tau_min,
            tau_max: self.tau_max,
            points: self.points,
            log: self.log,
            theta_min: self.theta_min,
            theta_max: self.theta_max,
            cutoffs: self.cutoffs,
            method: self.method,
            rel_tol: self.rel_tol,
            criteria: self.criteria,
            threads: self.threads,
            out: self.out,
        };
        Ok(file.overlay(flags))
    }
}

#[derive(Args, Debug, Clone)]
struct Units {
    /// Plate separation L in meters.
    #[arg(long)]
    length: f64,
    /// Temperature in kelvin.
    #[arg(long)]
    temperature: f64,
    /// dc conductivity σ₀ in (Ωm)⁻¹.
    #[arg(long, default_value_t = 4.52e7)]
    sigma0: f64,
    /// Plasma wavelength λ_P in meters.
    #[arg(long, default_value_t = 136e-9)]
    lambda_p: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn in_pool(threads: Option<usize>, f: impl FnOnce() -> Result<(), CliError> + Send) -> Result<(), CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    let pool = b.build().map_err(|e| CliError::Io(e.to_string()))?;
    pool.install(f)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (common, cmd): (Common, fn(RunConfig) -> Result<(), CliError>) = match cli.command {
        Command::ConvertUnits(u) => {
            return commands::convert_units(
                commands::Physical {
                    length: u.length,
                    temperature: u.temperature,
                    sigma0: u.sigma0,
                    lambda_p: u.lambda_p,
                },
                u.out.as_deref(),
            )
        }
        Command::BrownianEntropy(c) => (c, commands::brownian_entropy),
        Command::CasimirForce(c) => (c, commands::casimir_force),
        Command::CasimirEntropy(c) => (c, commands::casimir_entropy),
        Command::Delta(c) => (c, commands::delta),
        Command::Validate(c) => (c, commands::validate),
    };
    let cfg = common.resolve()?;
    let threads = cfg.threads()?;
    in_pool(threads, move || cmd(cfg))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("casthermo: {e}");
            ExitCode::from(e.code())
        }
    }
}
