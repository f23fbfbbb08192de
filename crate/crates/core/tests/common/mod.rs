//! Independent polynomial oracles shared by the integration tests.

use nalgebra::DMatrix;

use chebymg::smoothers::{beta_coefficients, Family};

/// Dense polynomial in `t`, lowest degree first.
#[derive(Clone, Debug)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn constant(c: f64) -> Self {
        Poly(vec![c])
    }

    /// `a + b t`
    pub fn linear(a: f64, b: f64) -> Self {
        Poly(vec![a, b])
    }

    pub fn add(&self, o: &Poly, s: f64) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly((0..n).map(|i| self.0.get(i).unwrap_or(&0.0) + s * o.0.get(i).unwrap_or(&0.0)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut c = vec![0.0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly(c)
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Horner on a square matrix.
    pub fn eval_matrix(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let n = x.nrows();
        let mut acc = DMatrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = &acc * x + DMatrix::identity(n, n) * *c;
        }
        acc
    }
}

/// Three-term Chebyshev-type recurrence `T_{j+1} = 2 y T_j - T_{j-1}`.
fn chebyshev_like(y: &Poly, first: Poly, k: usize) -> Poly {
    let (mut prev, mut cur) = (Poly::constant(1.0), first);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = y.mul(&cur).scale(2.0).add(&prev, -1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Residual polynomial of the configured smoother in `t = SA`, built from
/// closed forms (1st kind, plain 4th kind) or by unrolling the scaled
/// 4th-kind iteration with polynomial coefficients.
pub fn oracle(family: Family, k: usize, lmax: f64, lmin: f64) -> Poly {
    match family {
        Family::First | Family::FirstOptLambda => {
            let (theta, delta) = (0.5 * (lmax + lmin), 0.5 * (lmax - lmin));
            let y = Poly::linear(theta / delta, -1.0 / delta);
            let t = chebyshev_like(&y, y.clone(), k);
            let norm = t.eval(0.0);
            t.scale(1.0 / norm)
        }
        Family::Fourth => {
            let y = Poly::linear(1.0, -2.0 / lmax);
            let w = chebyshev_like(&y, y.scale(2.0).add(&Poly::constant(1.0), 1.0), k);
            w.scale(1.0 / (2 * k + 1) as f64)
        }
        Family::FourthOpt => {
            let betas = beta_coefficients(k).unwrap();
            let t = Poly::linear(0.0, 1.0);
            // error e, preconditioned residual z = S r = t e, direction d
            let mut e = Poly::constant(1.0);
            let mut z = t.clone();
            let mut d = z.scale(4.0 / (3.0 * lmax));
            for i in 1..=k {
                e = e.add(&d, -betas[i - 1]);
                if i == k {
                    break;
                }
                z = z.add(&t.mul(&d), -1.0);
                let fi = i as f64;
                d = d.scale((2.0 * fi - 1.0) / (2.0 * fi + 3.0)).add(&z, (8.0 * fi + 4.0) / ((2.0 * fi + 3.0) * lmax));
            }
            e
        }
    }
}
