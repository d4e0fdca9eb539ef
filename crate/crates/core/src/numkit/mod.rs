//! Numerical kernels shared by the physics modules: adaptive quadrature on
//! finite and semi-infinite ranges, oscillatory Fourier-type integrals,
//! accelerated series and Richardson-extrapolated derivatives.
//!
//! Every kernel has an infallible form taking `FnMut(f64) -> f64` and a
//! `try_` form whose integrand may fail with any error type implementing
//! `From<NumError>`, so inner quadrature failures propagate unchanged through
//! nested integrals.

mod diff;
mod oscillatory;
mod quad;
mod series;

pub use diff::{derivative, try_derivative};
pub use oscillatory::{
    decay_length, integrate_cosine, integrate_oscillatory, try_decay_length,
    try_integrate_oscillatory, OscOptions, Weight,
};
pub use quad::{
    integrate, integrate_semi_inf, integrate_semi_inf_opts, try_integrate,
    try_integrate_semi_inf_opts, SemiInf,
};
pub use series::{sum_accelerated, sum_smooth, try_sum_accelerated, try_sum_smooth};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("invalid tolerance specification: {0}")]
    InvalidSpec(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integrand returned {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },
    #[error("envelope decay could not be established: {0}")]
    Envelope(String),
}

/// Tolerances and evaluation budget for one kernel invocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: u64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_evals: 200_000,
        }
    }
}

impl QuadSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_evals: u64) -> Result<Self, NumError> {
        let s = QuadSpec {
            rel_tol,
            abs_tol,
            max_evals,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), NumError> {
        let ok_num = |x: f64| x.is_finite() && x >= 0.0;
        if !ok_num(self.rel_tol) || !ok_num(self.abs_tol) {
            return Err(NumError::InvalidSpec(format!(
                "tolerances must be finite and non-negative (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.rel_tol == 0.0 && self.abs_tol == 0.0 {
            return Err(NumError::InvalidSpec(
                "rel_tol and abs_tol cannot both be zero".into(),
            ));
        }
        if self.max_evals < 100 {
            return Err(NumError::InvalidSpec(format!(
                "max_evals must be at least 100, got {}",
                self.max_evals
            )));
        }
        Ok(())
    }

    pub fn with_rel(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_evals(mut self, max_evals: u64) -> Self {
        self.max_evals = max_evals;
        self
    }

    /// Target error for a result of the given magnitude.
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value, error estimate, evaluation count and convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evals: u64,
    pub converged: bool,
}

impl QuadResult {
    pub fn exact(value: f64) -> Self {
        QuadResult {
            value,
            err_estimate: 0.0,
            evals: 0,
            converged: true,
        }
    }
}

pub(crate) fn check_finite(x: f64, value: f64) -> Result<f64, NumError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(NumError::NonFinite { x, value })
    }
}
