use std::time::Instant;

use super::{SolveReport, StopReason};
use crate::{axpy, dot, norm2, Error, Operator, Result};

fn residual(a: &dyn Operator, b: &[f64], x: &[f64]) -> Vec<f64> {
    let mut r = vec![0.0; b.len()];
    a.apply(x, &mut r);
    r.iter_mut().zip(b).for_each(|(ri, bi)| *ri = bi - *ri);
    r
}

/// Debug builds refuse preconditioners that are visibly non-symmetric.
#[cfg(debug_assertions)]
fn probe_symmetry(m: &dyn Operator) -> Result<()> {
    let n = m.dim();
    let u: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 13) as f64 - 6.0).collect();
    let v: Vec<f64> = (0..n).map(|i| ((i * 5 + 1) % 11) as f64 - 5.0).collect();
    let (mut mu, mut mv) = (vec![0.0; n], vec![0.0; n]);
    m.apply(&u, &mut mu);
    m.apply(&v, &mut mv);
    let (l, r) = (dot(&mu, &v), dot(&u, &mv));
    let scale = norm2(&mu) * norm2(&v) + norm2(&u) * norm2(&mv);
    if (l - r).abs() > 1e-8 * scale {
        return Err(Error::InvalidArgument("PCG needs a symmetric preconditioner".into()));
    }
    Ok(())
}

/// Preconditioned conjugate gradients, stopping on
/// `‖b - A x‖ / ‖b - A x0‖ ≤ tol`.
///
/// The recurrence residual drives the iteration; once it meets the tolerance
/// the true residual is computed, and the iteration restarts from it if the
/// two disagree.
pub fn pcg(
    a: &dyn Operator,
    m: &dyn Operator,
    b: &[f64],
    x0: &[f64],
    tol: f64,
    max_iters: usize,
) -> Result<(Vec<f64>, SolveReport)> {
    let n = a.dim();
    for got in [m.dim(), b.len(), x0.len()] {
        if got != n {
            return Err(Error::DimensionMismatch { expected: n, got });
        }
    }
    #[cfg(debug_assertions)]
    probe_symmetry(m)?;

    let start = Instant::now();
    let count0 = a.applications();
    let mut x = x0.to_vec();
    let mut r = residual(a, b, &x);
    let r0 = norm2(&r);
    let mut history = vec![r0];
    if r0 == 0.0 {
        return Ok((x, SolveReport::finish(history, 0.0, StopReason::Converged, 0, start.elapsed())));
    }
    let target = tol * r0;

    let mut z = vec![0.0; n];
    let mut q = vec![0.0; n];
    m.apply(&r, &mut z);
    let mut rz = dot(&r, &z);
    let mut p = z.clone();
    let mut final_residual = r0;
    let mut stop = StopReason::MaxIterations;
    let mut it = 0;
    while it < max_iters {
        if !(rz > 0.0) {
            return Err(Error::IndefinitePreconditioner { iteration: it });
        }
        a.apply(&p, &mut q);
        let pq = dot(&p, &q);
        if !(pq > 0.0) {
            return Err(Error::IndefinitePreconditioner { iteration: it });
        }
        let alpha = rz / pq;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &q, &mut r);
        it += 1;
        let mut rn = norm2(&r);
        if rn <= target {
            r = residual(a, b, &x);
            rn = norm2(&r);
            if rn <= target {
                history.push(rn);
                final_residual = rn;
                stop = StopReason::Converged;
                break;
            }
            // drifted: restart the search direction from the true residual
            history.push(rn);
            m.apply(&r, &mut z);
            rz = dot(&r, &z);
            p.copy_from_slice(&z);
            continue;
        }
        history.push(rn);
        final_residual = rn;
        m.apply(&r, &mut z);
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for (pi, zi) in p.iter_mut().zip(&z) {
            *pi = zi + beta * *pi;
        }
    }
    if stop != StopReason::Converged {
        final_residual = norm2(&residual(a, b, &x));
    }
    let matvecs = a.applications() - count0;
    Ok((x, SolveReport::finish(history, final_residual, stop, matvecs, start.elapsed())))
}
