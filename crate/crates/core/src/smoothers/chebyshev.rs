use super::{ChebyshevConfig, Family, Jacobi};
use crate::discretization::LinearOperator;
use crate::{axpy, Error, Operator, Result};

fn check_dims(a: &LinearOperator, s: &Jacobi, b: &[f64], x: &[f64]) -> Result<()> {
    let n = a.rows();
    for got in [s.diagonal().len(), b.len(), x.len()] {
        if got != n {
            return Err(Error::DimensionMismatch { expected: n, got });
        }
    }
    Ok(())
}

/// `r = b - A x`, skipping the product when `x` is identically zero.
fn residual(a: &LinearOperator, b: &[f64], x: &[f64], r: &mut [f64]) {
    if x.iter().all(|&v| v == 0.0) {
        r.copy_from_slice(b);
    } else {
        a.apply(x, r);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = bi - *ri;
        }
    }
}

fn first_kind_in_place(a: &LinearOperator, s: &Jacobi, b: &[f64], x: &mut [f64], cfg: &ChebyshevConfig) {
    let k = cfg.order;
    if k == 0 {
        return;
    }
    let (lmax, lmin) = (cfg.lambda_max(), cfg.lambda_min());
    let theta = 0.5 * (lmax + lmin);
    let delta = 0.5 * (lmax - lmin);
    let sigma = theta / delta;
    let mut rho = 1.0 / sigma;

    let n = x.len();
    let mut tmp = vec![0.0; n];
    let mut r = vec![0.0; n];
    residual(a, b, x, &mut tmp);
    s.apply(&tmp, &mut r);
    let mut d: Vec<f64> = r.iter().map(|v| v / theta).collect();
    let mut sad = vec![0.0; n];
    for _ in 1..k {
        axpy(1.0, &d, x);
        a.apply(&d, &mut tmp);
        s.apply(&tmp, &mut sad);
        axpy(-1.0, &sad, &mut r);
        let rho_next = 1.0 / (2.0 * sigma - rho);
        let (c_d, c_r) = (rho_next * rho, 2.0 * rho_next / delta);
        for (di, ri) in d.iter_mut().zip(&r) {
            *di = c_d * *di + c_r * ri;
        }
        rho = rho_next;
    }
    axpy(1.0, &d, x);
}

fn fourth_kind_in_place(
    a: &LinearOperator,
    s: &Jacobi,
    b: &[f64],
    x: &mut [f64],
    lambda_max: f64,
    betas: &[f64],
) {
    let k = betas.len();
    if k == 0 {
        return;
    }
    let n = x.len();
    let mut r = vec![0.0; n];
    let mut sr = vec![0.0; n];
    let mut ad = vec![0.0; n];
    residual(a, b, x, &mut r);
    s.apply(&r, &mut sr);
    let scale0 = 4.0 / (3.0 * lambda_max);
    let mut d: Vec<f64> = sr.iter().map(|v| scale0 * v).collect();
    for i in 1..k {
        axpy(betas[i - 1], &d, x);
        a.apply(&d, &mut ad);
        axpy(-1.0, &ad, &mut r);
        s.apply(&r, &mut sr);
        let fi = i as f64;
        let c_d = (2.0 * fi - 1.0) / (2.0 * fi + 3.0);
        let c_r = (8.0 * fi + 4.0) / (2.0 * fi + 3.0) / lambda_max;
        for (di, si) in d.iter_mut().zip(&sr) {
            *di = c_d * *di + c_r * si;
        }
    }
    axpy(betas[k - 1], &d, x);
}

/// 1st-kind Chebyshev smoothing of `A x = b` from `x0` on `[λ_min, λ_max]`.
///
/// Uses `k - 1` products with `A`, plus one for the initial residual unless
/// `x0` is zero.
pub fn cheb1_smooth(
    a: &LinearOperator,
    s: &Jacobi,
    b: &[f64],
    x0: &[f64],
    cfg: &ChebyshevConfig,
) -> Result<Vec<f64>> {
    if !cfg.family.is_first_kind() {
        return Err(Error::InvalidSmoother(format!("{} is not a 1st-kind family", cfg.family)));
    }
    cfg.validate()?;
    check_dims(a, s, b, x0)?;
    let mut x = x0.to_vec();
    first_kind_in_place(a, s, b, &mut x, cfg);
    Ok(x)
}

/// 4th-kind Chebyshev smoothing with step scalings `betas` (all ones for the
/// plain 4th kind). The order is `betas.len()`.
pub fn cheb4_smooth(
    a: &LinearOperator,
    s: &Jacobi,
    b: &[f64],
    x0: &[f64],
    cfg: &ChebyshevConfig,
    betas: &[f64],
) -> Result<Vec<f64>> {
    if cfg.family.is_first_kind() {
        return Err(Error::InvalidSmoother(format!("{} is not a 4th-kind family", cfg.family)));
    }
    cfg.validate()?;
    check_dims(a, s, b, x0)?;
    let mut x = x0.to_vec();
    fourth_kind_in_place(a, s, b, &mut x, cfg.lambda_max(), betas);
    Ok(x)
}

/// Runs whichever smoother `cfg.family` selects, overwriting `x`.
pub fn smooth_into(a: &LinearOperator, s: &Jacobi, b: &[f64], x: &mut [f64], cfg: &ChebyshevConfig) -> Result<()> {
    cfg.validate()?;
    check_dims(a, s, b, x)?;
    match cfg.family {
        Family::First | Family::FirstOptLambda => first_kind_in_place(a, s, b, x, cfg),
        Family::Fourth | Family::FourthOpt => {
            let betas = cfg.betas()?.unwrap_or_default();
            fourth_kind_in_place(a, s, b, x, cfg.lambda_max(), &betas);
        }
    }
    Ok(())
}

pub fn smooth(a: &LinearOperator, s: &Jacobi, b: &[f64], x0: &[f64], cfg: &ChebyshevConfig) -> Result<Vec<f64>> {
    let mut x = x0.to_vec();
    smooth_into(a, s, b, &mut x, cfg)?;
    Ok(x)
}
