use std::time::Instant;

use super::{SolveReport, StopReason};
use crate::{axpy, norm2, Error, Operator, Result};

/// `x ← x + M (b - A x)` until `‖b - A x‖ / ‖b - A x0‖ ≤ tol`. With `M` a
/// V-cycle from zero this is multigrid used as a solver.
pub fn stationary(
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
    let start = Instant::now();
    let count0 = a.applications();
    let mut x = x0.to_vec();
    let mut r = vec![0.0; n];
    let mut z = vec![0.0; n];
    let residual = |x: &[f64], r: &mut [f64]| {
        a.apply(x, r);
        r.iter_mut().zip(b).for_each(|(ri, bi)| *ri = bi - *ri);
        norm2(r)
    };
    let r0 = residual(&x, &mut r);
    let mut history = vec![r0];
    let mut rn = r0;
    let mut stop = StopReason::MaxIterations;
    if r0 == 0.0 {
        stop = StopReason::Converged;
    }
    while stop != StopReason::Converged && history.len() <= max_iters {
        m.apply(&r, &mut z);
        axpy(1.0, &z, &mut x);
        rn = residual(&x, &mut r);
        history.push(rn);
        if rn <= tol * r0 {
            stop = StopReason::Converged;
        } else if !rn.is_finite() || rn > 1e8 * r0 {
            stop = StopReason::Diverged;
            break;
        }
    }
    let matvecs = a.applications() - count0;
    Ok((x, SolveReport::finish(history, rn, stop, matvecs, start.elapsed())))
}
