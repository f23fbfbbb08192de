//! Krylov drivers: preconditioned CG and right-preconditioned restarted GMRES,
//! plus the stationary multigrid iteration used in solver mode.

mod gmres;
mod pcg;
mod stationary;

use std::time::Duration;

pub use gmres::{arnoldi_basis, pgmres, GmresOptions};
pub use pcg::pcg;
pub use stationary::stationary;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxIterations,
    /// A whole GMRES restart cycle made no progress on the true residual.
    Stagnation,
    /// The stationary iteration's residual blew up.
    Diverged,
}

impl StopReason {
    pub fn name(self) -> &'static str {
        match self {
            StopReason::Converged => "converged",
            StopReason::MaxIterations => "max_iterations",
            StopReason::Stagnation => "stagnation",
            StopReason::Diverged => "diverged",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    /// Applications of the fine operator during the solve, including those
    /// made inside the preconditioner.
    pub fine_matvecs: u64,
    /// `‖b - A x_i‖₂` for `i = 0..=iterations`.
    pub residual_history: Vec<f64>,
    /// True residual norm of the returned iterate.
    pub final_residual: f64,
    pub rho: Option<f64>,
    pub converged: bool,
    pub stop: StopReason,
    pub wall_time: Duration,
}

impl SolveReport {
    pub(crate) fn finish(
        history: Vec<f64>,
        final_residual: f64,
        stop: StopReason,
        fine_matvecs: u64,
        wall_time: Duration,
    ) -> Self {
        let iterations = history.len() - 1;
        let rho = convergence_rate(&history).ok();
        Self {
            iterations,
            fine_matvecs,
            residual_history: history,
            final_residual,
            rho,
            converged: stop == StopReason::Converged,
            stop,
            wall_time,
        }
    }

    pub fn relative_residual(&self) -> f64 {
        self.final_residual / self.residual_history[0]
    }
}

/// Average convergence rate `ρ = exp(log(‖r_N‖ / ‖r_0‖) / N)` of a residual
/// history `[‖r_0‖, …, ‖r_N‖]`.
pub fn convergence_rate(history: &[f64]) -> Result<f64> {
    if history.len() < 2 {
        return Err(Error::InvalidArgument("convergence rate needs at least one iteration".into()));
    }
    let (r0, rn) = (history[0], history[history.len() - 1]);
    if r0 == 0.0 {
        return Err(Error::InvalidArgument("zero initial residual".into()));
    }
    let n = (history.len() - 1) as f64;
    Ok(((rn / r0).ln() / n).exp())
}
