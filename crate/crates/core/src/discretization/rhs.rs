use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Domain, LinearOperator};
use crate::{Error, Operator, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Rhs {
    pub b: Vec<f64>,
    pub u_exact: Vec<f64>,
}

/// `sin(3πx/L_x) sin(4πy/L_y)` at the interior nodes.
pub fn manufactured_solution(domain: &Domain) -> Vec<f64> {
    (0..domain.unknowns())
        .map(|k| {
            let (x, y) = domain.node(k);
            (3.0 * PI * x / domain.lx()).sin() * (4.0 * PI * y / domain.ly()).sin()
        })
        .collect()
}

/// Interior values of `g`, uniform on `[-1/2, 1/2)` from ChaCha8 seeded with
/// `seed`, drawn in unknown order. Boundary values are zero by construction.
pub fn random_perturbation(domain: &Domain, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..domain.unknowns()).map(|_| rng.gen_range(-0.5..0.5)).collect()
}

/// `u_exact = sin(3πx/L_x) sin(4πy/L_y) + g` and `b = A u_exact`.
///
/// `seed = None` drops the random part.
pub fn build_rhs(a: &LinearOperator, domain: &Domain, seed: Option<u64>) -> Result<Rhs> {
    if a.rows() != domain.unknowns() {
        return Err(Error::DimensionMismatch { expected: domain.unknowns(), got: a.rows() });
    }
    let mut u_exact = manufactured_solution(domain);
    if let Some(seed) = seed {
        for (u, g) in u_exact.iter_mut().zip(random_perturbation(domain, seed)) {
            *u += g;
        }
    }
    let mut b = vec![0.0; u_exact.len()];
    a.apply(&u_exact, &mut b);
    Ok(Rhs { b, u_exact })
}
