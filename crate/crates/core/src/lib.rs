//! Two-level geometric multigrid for the 2D Dirichlet Poisson problem with
//! Chebyshev-accelerated Jacobi smoothing.
//!
//! The crate is organised bottom-up:
//!
//! * [`discretization`]: 5-point operator, bilinear prolongation, Galerkin
//!   coarse operator, seeded right-hand sides and banded Cholesky solves.
//! * [`smoothers`]: Jacobi base smoother, 1st-kind and (optimized) 4th-kind
//!   Chebyshev smoothers, spectral radius estimation, the β table.
//! * [`multigrid`]: the two-level V-cycle (full and one-sided), the
//!   preconditioner wrapper and dense error-propagator assembly.
//! * [`krylov`]: preconditioned CG and right-preconditioned restarted GMRES.
//! * [`analysis`]: residual polynomials, γ⁻¹, V(C,k) bounds, critical C*,
//!   and the Lanczos estimate of the approximation-property constant.
//! * [`harness`]: case runner, parameter sweeps, λ_min tuning, CSV/SVG output.

pub mod analysis;
pub mod discretization;
pub mod error;
pub mod harness;
pub mod krylov;
pub mod multigrid;
pub mod smoothers;

pub use error::{Error, Result};

/// Something that maps a vector to a vector of the same length.
///
/// Both the fine operator and the preconditioners implement this, which lets
/// the Krylov drivers and the dense assembly helpers stay generic.
pub trait Operator: Sync {
    fn dim(&self) -> usize;

    /// `y = Op(x)`; `y` is overwritten.
    fn apply(&self, x: &[f64], y: &mut [f64]);

    /// Number of applications so far, if the operator keeps count.
    fn applications(&self) -> u64 {
        0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
