use super::LinearOperator;
use crate::{Error, Operator, Result};

/// Banded Cholesky factor `A = L Lᵀ` in natural ordering.
///
/// Row `i` of `L` is stored in `band[i * (w + 1)..(i + 1) * (w + 1)]` with
/// column `j` at offset `j + w - i`.
#[derive(Debug, Clone)]
pub struct Factorization {
    n: usize,
    w: usize,
    band: Vec<f64>,
}

impl Factorization {
    pub fn new(a: &LinearOperator) -> Result<Self> {
        let csr = a.to_csr();
        let n = csr.nrows();
        let w = csr.bandwidth();
        let stride = w + 1;
        let mut band = vec![0.0; n * stride];
        for i in 0..n {
            for (j, v) in csr.row(i) {
                if j <= i {
                    band[i * stride + j + w - i] = v;
                }
            }
        }
        for i in 0..n {
            let lo = i.saturating_sub(w);
            for j in lo..=i {
                let k0 = lo.max(j.saturating_sub(w));
                let mut s = band[i * stride + j + w - i];
                let (ri, rj) = (i * stride + w - i, j * stride + w - j);
                for k in k0..j {
                    s -= band[ri + k] * band[rj + k];
                }
                if j == i {
                    if !(s > 0.0) {
                        return Err(Error::NotPositiveDefinite { index: i, pivot: s });
                    }
                    band[i * stride + w] = s.sqrt();
                } else {
                    band[i * stride + j + w - i] = s / band[j * stride + w];
                }
            }
        }
        Ok(Self { n, w, band })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.w
    }

    pub fn solve(&self, r: &[f64]) -> Vec<f64> {
        let mut x = r.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    pub fn solve_in_place(&self, x: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        let (w, stride) = (self.w, self.w + 1);
        for i in 0..self.n {
            let lo = i.saturating_sub(w);
            let row = &self.band[i * stride..(i + 1) * stride];
            let mut s = x[i];
            for k in lo..i {
                s -= row[k + w - i] * x[k];
            }
            x[i] = s / row[w];
        }
        for i in (0..self.n).rev() {
            x[i] /= self.band[i * stride + w];
            let xi = x[i];
            let lo = i.saturating_sub(w);
            let row = &self.band[i * stride..(i + 1) * stride];
            for k in lo..i {
                x[k] -= row[k + w - i] * xi;
            }
        }
    }
}

/// Exact inverse as an operator, e.g. a perfect preconditioner.
impl Operator for Factorization {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(x);
        self.solve_in_place(y);
    }
}
