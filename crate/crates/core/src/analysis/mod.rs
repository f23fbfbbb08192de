//! V-cycle convergence theory for polynomial smoothers.
//!
//! Everything here works with `S` scaled so that `ρ(SA) = 1`: residual
//! polynomials live on `[0, 1]` and the 1st-kind lower bound is given as a
//! fraction of the upper one.

mod bounds;
mod lanczos;
mod polynomial;

pub use bounds::{
    bound_ratio, critical_c, gamma_inverse, gamma_inverse_numeric, gamma_inverse_opt_asymptote,
    lambda_min_opt_bound, lambda_min_opt_bound_with, v_bound, BoundSurface, GammaPair,
};
pub use lanczos::{estimate_c, spectral_radius_sa, CEstimate, LanczosOptions};
pub use polynomial::ResidualPolynomial;
