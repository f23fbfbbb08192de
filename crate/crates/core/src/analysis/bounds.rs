use std::f64::consts::PI;

use super::ResidualPolynomial;
use crate::smoothers::Family;
use crate::{Error, Result};

const SUP_SAMPLES: usize = 10_000;
const SUP_REFINE_TOL: f64 = 1e-10;
const C_UPPER: f64 = 1e12;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Sorted sample points on `[0, 1]`: half log-spaced from `1e-8`, half uniform,
/// plus `λ = 0` where the integrand is taken as its limit.
fn sup_grid() -> Vec<f64> {
    let half = SUP_SAMPLES / 2;
    let mut g = Vec::with_capacity(SUP_SAMPLES + 1);
    g.push(0.0);
    let (l0, l1) = (1e-8f64.ln(), 0.0);
    for i in 0..half {
        g.push((l0 + (l1 - l0) * i as f64 / (half - 1) as f64).exp());
    }
    for i in 1..=half {
        g.push(i as f64 / half as f64);
    }
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

/// `γ⁻¹ = 1 / sup_{0<λ≤1} λ p_k(λ)² / (1 - p_k(λ)²)`, by dense sampling and a
/// golden-section polish around the best sample.
pub fn gamma_inverse_numeric(p: &ResidualPolynomial) -> Result<f64> {
    let grid = sup_grid();
    let values: Vec<f64> = grid.iter().map(|&l| p.gamma_integrand(l)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidSmoother(format!(
            "{} order {}: |p_k| reaches 1 on (0, 1]",
            p.family(),
            p.order()
        )));
    }
    let (best, &fbest) = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let (_, frefined) = golden_max(|l| p.gamma_integrand(l), lo, hi, SUP_REFINE_TOL);
    Ok(1.0 / fbest.max(frefined))
}

/// `γ⁻¹` for a smoother family. The plain 4th kind uses `4k(k+1)/3`; the
/// others are computed numerically.
pub fn gamma_inverse(family: Family, k: usize, lambda_min: Option<f64>) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("order-0 smoother has no γ".into()));
    }
    match family {
        Family::Fourth => {
            let k = k as f64;
            Ok(4.0 * k * (k + 1.0) / 3.0)
        }
        _ => gamma_inverse_numeric(&ResidualPolynomial::new(family, k, lambda_min)?),
    }
}

/// Large-`k` behaviour of `γ⁻¹` for the optimized 4th kind,
/// `4(2k+1)²/π² - 2/3`.
pub fn gamma_inverse_opt_asymptote(k: usize) -> f64 {
    let t = 2.0 * k as f64 + 1.0;
    4.0 / (PI * PI) * t * t - 2.0 / 3.0
}

/// `V(C, k) = C / (C + γ⁻¹)`.
pub fn v_bound(c: f64, gamma_inv: f64) -> Result<f64> {
    if !(c >= 1.0) {
        return Err(Error::InvalidArgument(format!("C = {c} is below 1")));
    }
    Ok(c / (c + gamma_inv))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSurface {
    pub family: Family,
    pub k: usize,
    pub gamma_inv: f64,
}

impl BoundSurface {
    pub fn new(family: Family, k: usize, lambda_min: Option<f64>) -> Result<Self> {
        Ok(Self { family, k, gamma_inv: gamma_inverse(family, k, lambda_min)? })
    }

    pub fn eval(&self, c: f64) -> Result<f64> {
        v_bound(c, self.gamma_inv)
    }
}

/// `γ⁻¹` at orders `k` and `2k`, the inputs to every full-vs-one-sided
/// comparison. For [`Family::FirstOptLambda`] each order gets its own
/// bound-optimal `λ_min` unless one is given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub k: f64,
    pub two_k: f64,
}

impl GammaPair {
    pub fn new(family: Family, k: usize, lambda_min: Option<f64>) -> Result<Self> {
        Ok(Self { k: gamma_inverse(family, k, lambda_min)?, two_k: gamma_inverse(family, 2 * k, lambda_min)? })
    }

    /// `V(C,k) - sqrt(V(C,2k))`: negative where the full cycle has the
    /// smaller bound.
    pub fn gap(&self, c: f64) -> f64 {
        c / (c + self.k) - (c / (c + self.two_k)).sqrt()
    }

    pub fn ratio(&self, c: f64) -> f64 {
        (c / (c + self.k)) / (c / (c + self.two_k)).sqrt()
    }

    /// Smallest `C ≥ 1` at which the one-sided bound catches up with the full
    /// one, by bisection in `log C`.
    pub fn critical_c(&self) -> Result<f64> {
        if self.gap(1.0) >= 0.0 {
            return Ok(1.0);
        }
        if self.gap(C_UPPER) < 0.0 {
            return Err(Error::NoCriticalValue);
        }
        let (mut lo, mut hi) = (0.0f64, C_UPPER.ln());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.gap(mid.exp()) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 {
                break;
            }
        }
        let (a, b) = (lo.exp(), hi.exp());
        Ok(if self.gap(a).abs() <= self.gap(b).abs() { a } else { b })
    }
}

/// `C*` solving `V(C*, k) = sqrt(V(C*, 2k))`; above it the one-sided `2k`
/// cycle has the better bound.
pub fn critical_c(family: Family, k: usize, lambda_min: Option<f64>) -> Result<f64> {
    GammaPair::new(family, k, lambda_min)?.critical_c()
}

/// `V(C, k) / sqrt(V(C, 2k))`; values above 1 favour the one-sided cycle.
pub fn bound_ratio(c: f64, family: Family, k: usize, lambda_min: Option<f64>) -> Result<f64> {
    if !(c >= 1.0) {
        return Err(Error::InvalidArgument(format!("C = {c} is below 1")));
    }
    Ok(GammaPair::new(family, k, lambda_min)?.ratio(c))
}

/// `λ_min` (as a fraction of `λ_max`) maximizing `γ⁻¹` of the order-`k`
/// 1st-kind smoother, i.e. minimizing the V-cycle bound.
pub fn lambda_min_opt_bound(k: usize) -> Result<f64> {
    lambda_min_opt_bound_with(k, 256)
}

pub fn lambda_min_opt_bound_with(k: usize, grid_points: usize) -> Result<f64> {
    if k == 0 || grid_points < 3 {
        return Err(Error::InvalidArgument("need k ≥ 1 and at least 3 grid points".into()));
    }
    let (lo, hi) = (0.001f64, 0.5f64);
    let objective = |l: f64| {
        ResidualPolynomial::first_kind(k, l)
            .and_then(|p| gamma_inverse_numeric(&p))
            .unwrap_or(0.0)
    };
    let grid: Vec<f64> = (0..grid_points)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (grid_points - 1) as f64).exp())
        .collect();
    let values: Vec<f64> = grid.iter().map(|&l| objective(l)).collect();
    let (best, &fbest) = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(grid_points - 1)];
    let (x, fx) = golden_max(objective, a, b, 1e-6);
    Ok(if fx >= fbest { x } else { grid[best] })
}
