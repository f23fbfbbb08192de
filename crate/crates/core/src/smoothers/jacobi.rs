use crate::discretization::LinearOperator;
use crate::{Error, Operator, Result};

/// Point-Jacobi smoother `S = D⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jacobi {
    diag: Vec<f64>,
    inv_diag: Vec<f64>,
}

impl Jacobi {
    pub fn new(a: &LinearOperator) -> Result<Self> {
        Self::from_diagonal(a.diagonal())
    }

    pub fn from_diagonal(diag: Vec<f64>) -> Result<Self> {
        if let Some(i) = diag.iter().position(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(Error::ZeroDiagonal(i));
        }
        let inv_diag = diag.iter().map(|d| 1.0 / d).collect();
        Ok(Self { diag, inv_diag })
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn inverse_diagonal(&self) -> &[f64] {
        &self.inv_diag
    }

    /// `z = S r`
    pub fn apply(&self, r: &[f64], z: &mut [f64]) {
        for ((zi, ri), s) in z.iter_mut().zip(r).zip(&self.inv_diag) {
            *zi = ri * s;
        }
    }

    /// `z = S⁻¹ r`
    pub fn apply_inverse(&self, r: &[f64], z: &mut [f64]) {
        for ((zi, ri), d) in z.iter_mut().zip(r).zip(&self.diag) {
            *zi = ri * d;
        }
    }
}

impl Operator for Jacobi {
    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        Jacobi::apply(self, x, y)
    }
}
