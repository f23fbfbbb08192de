use super::{CsrMatrix, LinearOperator};
use crate::{Error, Result};

/// Bilinear interpolation from an `(coarse_n + 1)²` grid to an `(fine_n + 1)²`
/// grid sharing the same domain. Restriction is the plain transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct Prolongation {
    fine_n: usize,
    coarse_n: usize,
    matrix: CsrMatrix,
}

/// Interpolation weights of 1D interior fine node `i` (`1..fine_n`) onto 0-based
/// coarse interior indices.
fn weights_1d(fine_n: usize, coarse_n: usize, i: usize) -> Vec<(usize, f64)> {
    let ratio = fine_n / coarse_n;
    let (cell, offset) = (i / ratio, i % ratio);
    let t = offset as f64 / ratio as f64;
    let mut w = Vec::with_capacity(2);
    // coarse nodes 0 and coarse_n sit on the Dirichlet boundary
    if offset == 0 {
        w.push((cell - 1, 1.0));
        return w;
    }
    if cell >= 1 {
        w.push((cell - 1, 1.0 - t));
    }
    if cell + 1 < coarse_n {
        w.push((cell, t));
    }
    w
}

impl Prolongation {
    pub fn new(fine_n: usize, coarse_n: usize) -> Result<Self> {
        let bad = || Error::IncompatibleCoarsening { fine: fine_n, coarse: coarse_n };
        if coarse_n < 2 || fine_n <= coarse_n || fine_n % coarse_n != 0 {
            return Err(bad());
        }
        let (mf, mc) = (fine_n - 1, coarse_n - 1);
        let rows: Vec<_> = (1..fine_n).map(|i| weights_1d(fine_n, coarse_n, i)).collect();
        let mut t = Vec::new();
        for (jf, wy) in rows.iter().enumerate() {
            for (if_, wx) in rows.iter().enumerate() {
                let row = jf * mf + if_;
                for &(jc, vy) in wy {
                    for &(ic, vx) in wx {
                        t.push((row, jc * mc + ic, vx * vy));
                    }
                }
            }
        }
        Ok(Self { fine_n, coarse_n, matrix: CsrMatrix::from_triplets(mf * mf, mc * mc, &t) })
    }

    pub fn fine_n(&self) -> usize {
        self.fine_n
    }

    pub fn coarse_n(&self) -> usize {
        self.coarse_n
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn fine_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn coarse_dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// `fine = P coarse`
    pub fn prolong(&self, coarse: &[f64], fine: &mut [f64]) {
        self.matrix.mul_vec(coarse, fine);
    }

    /// `coarse = Pᵀ fine`
    pub fn restrict(&self, fine: &[f64], coarse: &mut [f64]) {
        self.matrix.mul_transpose_vec(fine, coarse);
    }

    /// `self ∘ coarser`: interpolation from `coarser`'s coarse grid straight to
    /// this fine grid.
    pub fn compose(&self, coarser: &Prolongation) -> Result<Prolongation> {
        if coarser.fine_n != self.coarse_n {
            return Err(Error::DimensionMismatch { expected: self.coarse_n, got: coarser.fine_n });
        }
        Ok(Prolongation {
            fine_n: self.fine_n,
            coarse_n: coarser.coarse_n,
            matrix: self.matrix.matmul(&coarser.matrix),
        })
    }
}

/// `A_c = Pᵀ A P` as an explicit sparse matrix.
pub fn galerkin_coarse(a: &LinearOperator, p: &Prolongation) -> Result<LinearOperator> {
    if a.rows() != p.fine_dim() {
        return Err(Error::DimensionMismatch { expected: p.fine_dim(), got: a.rows() });
    }
    let ap = a.to_csr().matmul(p.matrix());
    Ok(LinearOperator::sparse(p.matrix().transpose().matmul(&ap)))
}
