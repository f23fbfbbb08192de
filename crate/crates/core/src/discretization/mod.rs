//! Finite-difference discretization of the Dirichlet Poisson problem on
//! `[0, L_x] × [0, L_y]`, the two-grid transfer operators and exact solvers.
//!
//! Unknowns are the interior grid nodes in row-major order: node `(i, j)`
//! (x-index `i`, y-index `j`, both `1..n`) is stored at `(j - 1) * (n - 1) + (i - 1)`.

mod cholesky;
mod domain;
mod operator;
mod prolongation;
mod rhs;

pub use cholesky::Factorization;
pub use domain::Domain;
pub use operator::{CsrMatrix, FivePoint, LinearOperator};
pub use prolongation::{galerkin_coarse, Prolongation};
pub use rhs::{build_rhs, manufactured_solution, random_perturbation, Rhs};

use crate::Result;

pub fn build_fine_operator(domain: &Domain) -> LinearOperator {
    LinearOperator::stencil(domain)
}

pub fn build_prolongation(fine_n: usize, coarse_n: usize) -> Result<Prolongation> {
    Prolongation::new(fine_n, coarse_n)
}

pub fn factorize(a: &LinearOperator) -> Result<Factorization> {
    Factorization::new(a)
}
