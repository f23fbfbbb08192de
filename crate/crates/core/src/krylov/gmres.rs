use std::time::Instant;

use super::{SolveReport, StopReason};
use crate::{axpy, dot, norm2, Error, Operator, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresOptions {
    /// Inner iterations per restart cycle.
    pub restart: usize,
    pub tol: f64,
    pub max_iters: usize,
    /// Run classical Gram-Schmidt twice per Arnoldi step.
    pub second_pass: bool,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self { restart: 30, tol: 1e-6, max_iters: 1000, second_pass: true }
    }
}

/// Classical Gram-Schmidt of `w` against `basis`; returns the coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64], second_pass: bool) -> Vec<f64> {
    let mut h: Vec<f64> = basis.iter().map(|v| dot(v, w)).collect();
    for (v, &hi) in basis.iter().zip(&h) {
        axpy(-hi, v, w);
    }
    if second_pass {
        let h2: Vec<f64> = basis.iter().map(|v| dot(v, w)).collect();
        for ((v, &ci), hi) in basis.iter().zip(&h2).zip(h.iter_mut()) {
            axpy(-ci, v, w);
            *hi += ci;
        }
    }
    h
}

/// The first `steps + 1` Arnoldi vectors of `A M` started from `r0`, built
/// exactly as inside [`pgmres`].
pub fn arnoldi_basis(a: &dyn Operator, m: &dyn Operator, r0: &[f64], steps: usize, second_pass: bool) -> Vec<Vec<f64>> {
    let n = r0.len();
    let beta = norm2(r0);
    let mut basis = vec![r0.iter().map(|v| v / beta).collect::<Vec<_>>()];
    let (mut z, mut w) = (vec![0.0; n], vec![0.0; n]);
    for _ in 0..steps {
        m.apply(basis.last().unwrap(), &mut z);
        a.apply(&z, &mut w);
        orthogonalize(&basis, &mut w, second_pass);
        let hn = norm2(&w);
        if hn == 0.0 {
            break;
        }
        basis.push(w.iter().map(|v| v / hn).collect());
    }
    basis
}

/// Right-preconditioned restarted GMRES, `A M y = b`, `x = x0 + M y`.
///
/// Inner iterations track the least-squares residual, which equals
/// `‖b - A x_i‖`; each restart cycle ends with an explicit true residual that
/// decides convergence.
pub fn pgmres(
    a: &dyn Operator,
    m: &dyn Operator,
    b: &[f64],
    x0: &[f64],
    opts: &GmresOptions,
) -> Result<(Vec<f64>, SolveReport)> {
    if opts.restart == 0 {
        return Err(Error::InvalidArgument("GMRES restart length must be at least 1".into()));
    }
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
    let true_residual = |x: &[f64], r: &mut [f64]| {
        a.apply(x, r);
        r.iter_mut().zip(b).for_each(|(ri, bi)| *ri = bi - *ri);
        norm2(r)
    };
    let mut beta = true_residual(&x, &mut r);
    let mut history = vec![beta];
    if beta == 0.0 {
        return Ok((x, SolveReport::finish(history, 0.0, StopReason::Converged, 0, start.elapsed())));
    }
    let target = opts.tol * beta;
    let mut its = 0;
    let stop;
    let mut w = vec![0.0; n];
    loop {
        let cycle_start = beta;
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut zs: Vec<Vec<f64>> = Vec::new();
        // columns of the rotated (upper triangular) Hessenberg matrix
        let mut cols: Vec<Vec<f64>> = Vec::new();
        let (mut cs, mut sn): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
        let mut g = vec![beta];
        while zs.len() < opts.restart && its < opts.max_iters {
            let j = zs.len();
            let mut z = vec![0.0; n];
            m.apply(&basis[j], &mut z);
            a.apply(&z, &mut w);
            let mut h = orthogonalize(&basis, &mut w, opts.second_pass);
            let hn = norm2(&w);
            for i in 0..j {
                let t = cs[i] * h[i] + sn[i] * h[i + 1];
                h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
                h[i] = t;
            }
            let d = h[j].hypot(hn);
            let (c, s) = if d == 0.0 { (1.0, 0.0) } else { (h[j] / d, hn / d) };
            h[j] = d;
            cs.push(c);
            sn.push(s);
            g.push(-s * g[j]);
            g[j] *= c;
            cols.push(h);
            zs.push(z);
            its += 1;
            let est = g[j + 1].abs();
            history.push(est);
            if est <= target || hn == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / hn).collect());
        }
        // back substitution R y = g
        let k = zs.len();
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let mut s = g[i];
            for (l, yl) in y.iter().enumerate().skip(i + 1) {
                s -= cols[l][i] * yl;
            }
            y[i] = s / cols[i][i];
        }
        for (z, yi) in zs.iter().zip(&y) {
            axpy(*yi, z, &mut x);
        }
        beta = true_residual(&x, &mut r);
        if beta <= target {
            stop = StopReason::Converged;
            break;
        }
        if its >= opts.max_iters {
            stop = StopReason::MaxIterations;
            break;
        }
        if !(beta < cycle_start) {
            stop = StopReason::Stagnation;
            break;
        }
    }
    let matvecs = a.applications() - count0;
    Ok((x, SolveReport::finish(history, beta, stop, matvecs, start.elapsed())))
}
