use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discretization::{Factorization, LinearOperator};
use crate::multigrid::Hierarchy;
use crate::smoothers::{estimate_lambda_max, Jacobi};
use crate::{axpy, dot, norm2, Error, Result};

/// Power steps used for `ρ(D⁻¹A)` when normalizing the smoother.
pub const SPECTRAL_RADIUS_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Krylov dimension.
    pub m: usize,
    pub seed: u64,
    /// Reorthogonalize every new vector against the whole basis.
    pub reorthogonalize: bool,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self { m: 20, seed: 0, reorthogonalize: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CEstimate {
    pub c: f64,
    pub iterations: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// `ρ(SA)` for the Jacobi smoother, from a long power iteration.
pub fn spectral_radius_sa(a: &LinearOperator, s: &Jacobi, seed: u64) -> Result<f64> {
    estimate_lambda_max(a, s, SPECTRAL_RADIUS_STEPS, seed)
}

/// Largest eigenvalue of `π_f (SA)⁻¹` with `S = D⁻¹ / ρ(D⁻¹A)`, where
/// `π_f = I - P A_c⁻¹ Pᵀ A`.
///
/// `(SA)⁻¹ q = A⁻¹ (ρ D q)`, so the product reduces to
/// `ρ (A⁻¹ - P A_c⁻¹ Pᵀ) D q`. For a constant diagonal this is symmetric and
/// plain Lanczos applies.
pub fn estimate_c(h: &Hierarchy, fine_solver: &Factorization, rho_sa: f64, opts: &LanczosOptions) -> Result<CEstimate> {
    let n = h.dim();
    if fine_solver.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: fine_solver.dim() });
    }
    if !(rho_sa > 0.0 && rho_sa.is_finite()) {
        return Err(Error::InvalidArgument(format!("ρ(SA) = {rho_sa} must be positive")));
    }
    if opts.m == 0 {
        return Err(Error::InvalidArgument("Lanczos needs at least one step".into()));
    }
    let p = h.prolongation();
    let d = h.smoother().diagonal();
    let apply = |q: &[f64], out: &mut [f64]| {
        let dq: Vec<f64> = q.iter().zip(d).map(|(qi, di)| rho_sa * di * qi).collect();
        out.copy_from_slice(&dq);
        fine_solver.solve_in_place(out);
        let mut rc = vec![0.0; p.coarse_dim()];
        p.restrict(&dq, &mut rc);
        h.coarse_solver().solve_in_place(&mut rc);
        let mut corr = vec![0.0; n];
        p.prolong(&rc, &mut corr);
        axpy(-1.0, &corr, out);
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut q: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let nq = norm2(&q);
    q.iter_mut().for_each(|v| *v /= nq);
    let mut basis = vec![q];
    let (mut alpha, mut beta): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; n];
    let steps = opts.m.min(n);
    for k in 0..steps {
        apply(&basis[k], &mut w);
        let a = dot(&basis[k], &w);
        axpy(-a, &basis[k], &mut w);
        if k > 0 {
            axpy(-beta[k - 1], &basis[k - 1], &mut w);
        }
        if opts.reorthogonalize {
            for v in &basis {
                let c = dot(v, &w);
                axpy(-c, v, &mut w);
            }
        }
        alpha.push(a);
        let b = norm2(&w);
        if k + 1 == steps || b <= 1e-14 * a.abs().max(1.0) {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|v| v / b).collect());
    }

    let m = alpha.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let c = t.symmetric_eigenvalues().iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    Ok(CEstimate { c, iterations: m, alpha, beta })
}
