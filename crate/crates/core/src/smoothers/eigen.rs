use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Jacobi;
use crate::discretization::LinearOperator;
use crate::{dot, norm2, Error, Operator, Result};

/// Power iteration on `SA` from a seeded random start, read out as the
/// `D`-weighted Rayleigh quotient `vᵀAv / vᵀDv`.
///
/// `SA` is self-adjoint in the `D` inner product, so the estimate never
/// exceeds `ρ(SA)`.
pub fn estimate_lambda_max(a: &LinearOperator, s: &Jacobi, iterations: usize, seed: u64) -> Result<f64> {
    if iterations == 0 {
        return Err(Error::InvalidArgument("power iteration needs at least one step".into()));
    }
    let n = a.rows();
    if s.diagonal().len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: s.diagonal().len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut av = vec![0.0; n];
    for _ in 0..iterations {
        a.apply(&v, &mut av);
        s.apply(&av, &mut v);
        let nv = norm2(&v);
        v.iter_mut().for_each(|x| *x /= nv);
    }
    a.apply(&v, &mut av);
    let dv: Vec<f64> = v.iter().zip(s.diagonal()).map(|(x, d)| d * x).collect();
    Ok(dot(&v, &av) / dot(&v, &dv))
}
