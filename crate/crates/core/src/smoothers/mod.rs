//! Jacobi base smoother and its Chebyshev accelerations.

mod beta;
mod chebyshev;
mod eigen;
mod jacobi;

use std::fmt;
use std::str::FromStr;

pub use beta::{beta_coefficients, BetaTable, BETA_TABLE_VERSION, MAX_OPTIMIZED_ORDER};
pub use chebyshev::{cheb1_smooth, cheb4_smooth, smooth, smooth_into};
pub use eigen::estimate_lambda_max;
pub use jacobi::Jacobi;

use crate::{Error, Result};

pub const DEFAULT_LAMBDA_MAX_MULT: f64 = 1.1;
pub const DEFAULT_LAMBDA_MIN_MULT: f64 = 0.1;
/// Power-iteration steps used for `λ̃` in the solver setup.
pub const DEFAULT_POWER_STEPS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// 1st-kind Chebyshev with `λ_min = 0.1 λ̃` (or any fixed multiplier).
    First,
    /// 1st-kind Chebyshev whose `λ_min` multiplier is tuned.
    FirstOptLambda,
    /// 4th-kind Chebyshev, `β_i = 1`.
    Fourth,
    /// 4th-kind Chebyshev with tabulated optimal `β_i`.
    FourthOpt,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::First, Family::FirstOptLambda, Family::Fourth, Family::FourthOpt];

    pub fn is_first_kind(self) -> bool {
        matches!(self, Family::First | Family::FirstOptLambda)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::First => "first",
            Family::FirstOptLambda => "first_opt_lambda",
            Family::Fourth => "fourth",
            Family::FourthOpt => "fourth_opt",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "first" => Ok(Family::First),
            "first_opt_lambda" | "first_opt" => Ok(Family::FirstOptLambda),
            "fourth" => Ok(Family::Fourth),
            "fourth_opt" => Ok(Family::FourthOpt),
            other => Err(Error::Config(format!("unknown smoother family `{other}`"))),
        }
    }
}

/// Chebyshev smoother parameters. Eigenvalue bounds are multiples of the
/// estimate `λ̃ ≈ λ_max(SA)`: `λ_max = lambda_max_mult · λ̃` and, for the 1st
/// kind only, `λ_min = lambda_min_mult · λ̃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevConfig {
    pub family: Family,
    pub order: usize,
    pub lambda_tilde: f64,
    pub lambda_max_mult: f64,
    pub lambda_min_mult: f64,
}

impl ChebyshevConfig {
    pub fn new(family: Family, order: usize, lambda_tilde: f64) -> Self {
        Self {
            family,
            order,
            lambda_tilde,
            lambda_max_mult: DEFAULT_LAMBDA_MAX_MULT,
            lambda_min_mult: DEFAULT_LAMBDA_MIN_MULT,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn with_lambda_min_mult(mut self, mult: f64) -> Self {
        self.lambda_min_mult = mult;
        self
    }

    pub fn with_lambda_max_mult(mut self, mult: f64) -> Self {
        self.lambda_max_mult = mult;
        self
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max_mult * self.lambda_tilde
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min_mult * self.lambda_tilde
    }

    /// Step scalings for the 4th-kind families; `None` for the 1st kind.
    pub fn betas(&self) -> Result<Option<Vec<f64>>> {
        match self.family {
            Family::First | Family::FirstOptLambda => Ok(None),
            Family::Fourth => Ok(Some(vec![1.0; self.order])),
            Family::FourthOpt if self.order == 0 => Ok(Some(Vec::new())),
            Family::FourthOpt => Ok(Some(beta_coefficients(self.order)?.to_vec())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_max() > 0.0 && self.lambda_max().is_finite()) {
            return Err(Error::InvalidSmoother(format!("lambda_max = {} must be positive", self.lambda_max())));
        }
        if self.family.is_first_kind() && !(self.lambda_min() > 0.0 && self.lambda_min() < self.lambda_max()) {
            return Err(Error::InvalidSmoother(format!(
                "need 0 < lambda_min < lambda_max, got {} and {}",
                self.lambda_min(),
                self.lambda_max()
            )));
        }
        if self.family == Family::FourthOpt && self.order > MAX_OPTIMIZED_ORDER {
            return Err(Error::BetaOrderOutOfRange(self.order));
        }
        Ok(())
    }
}
