use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::DMatrix;

use super::Domain;
use crate::Operator;

/// Compressed sparse row matrix. Column indices within a row are sorted and
/// unique.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from `(row, col, value)` triplets; duplicates are summed in the
    /// order they appear.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nrows];
        for &(i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i}, {j}) outside {nrows}x{ncols}");
            rows[i].push((j, v));
        }
        let mut row_ptr = Vec::with_capacity(nrows + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            // stable sort keeps the summation order of duplicates fixed
            row.sort_by_key(|&(j, _)| j);
            let mut iter = row.into_iter().peekable();
            while let Some((j, mut v)) = iter.next() {
                while let Some(&(jn, vn)) = iter.peek() {
                    if jn != j {
                        break;
                    }
                    v += vn;
                    iter.next();
                }
                col_idx.push(j);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        Self { nrows, ncols, row_ptr, col_idx, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: diag.to_vec(),
        }
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        let mut t = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)] != 0.0 {
                    t.push((i, j, m[(i, j)]));
                }
            }
        }
        Self::from_triplets(m.nrows(), m.ncols(), &t)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()].iter().copied().zip(self.values[range].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[range.clone()].binary_search(&j) {
            Ok(k) => self.values[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).collect()
    }

    /// Largest `|i - j|` over stored entries.
    pub fn bandwidth(&self) -> usize {
        (0..self.nrows)
            .flat_map(|i| self.row(i).map(move |(j, _)| i.abs_diff(j)))
            .max()
            .unwrap_or(0)
    }

    /// `y = A x`
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.ncols);
        assert_eq!(y.len(), self.nrows);
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.values[k] * x[self.col_idx[k]];
            }
            *yi = s;
        }
    }

    /// `y = Aᵀ x`
    pub fn mul_transpose_vec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.nrows);
        assert_eq!(y.len(), self.ncols);
        y.fill(0.0);
        for (i, &xi) in x.iter().enumerate() {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                y[self.col_idx[k]] += self.values[k] * xi;
            }
        }
    }

    pub fn transpose(&self) -> CsrMatrix {
        let mut t = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                t.push((j, i, v));
            }
        }
        Self::from_triplets(self.ncols, self.nrows, &t)
    }

    /// Sparse product `self * other`.
    pub fn matmul(&self, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!(self.ncols, other.nrows, "inner dimensions differ");
        let mut acc = vec![0.0; other.ncols];
        let mut touched = vec![false; other.ncols];
        let mut cols: Vec<usize> = Vec::new();
        let mut row_ptr = vec![0];
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for i in 0..self.nrows {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if !touched[j] {
                        touched[j] = true;
                        cols.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            cols.sort_unstable();
            for &j in &cols {
                col_idx.push(j);
                values.push(acc[j]);
                acc[j] = 0.0;
                touched[j] = false;
            }
            cols.clear();
            row_ptr.push(col_idx.len());
        }
        CsrMatrix { nrows: self.nrows, ncols: other.ncols, row_ptr, col_idx, values }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }
}

/// Matrix-free 5-point Laplacian on an `m × m` interior grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FivePoint {
    m: usize,
    cx: f64,
    cy: f64,
}

impl FivePoint {
    pub fn new(domain: &Domain) -> Self {
        let (hx, hy) = (domain.hx(), domain.hy());
        Self { m: domain.interior_per_side(), cx: 1.0 / (hx * hx), cy: 1.0 / (hy * hy) }
    }

    pub fn center(&self) -> f64 {
        2.0 * self.cx + 2.0 * self.cy
    }

    /// Off-diagonal couplings `(-1/h_x², -1/h_y²)`.
    pub fn off_diagonal(&self) -> (f64, f64) {
        (-self.cx, -self.cy)
    }

    pub fn interior_per_side(&self) -> usize {
        self.m
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let m = self.m;
        let c = self.center();
        for j in 0..m {
            for i in 0..m {
                let k = j * m + i;
                let mut s = c * x[k];
                if i > 0 {
                    s -= self.cx * x[k - 1];
                }
                if i + 1 < m {
                    s -= self.cx * x[k + 1];
                }
                if j > 0 {
                    s -= self.cy * x[k - m];
                }
                if j + 1 < m {
                    s -= self.cy * x[k + m];
                }
                y[k] = s;
            }
        }
    }

    fn to_csr(&self) -> CsrMatrix {
        let m = self.m;
        let mut t = Vec::with_capacity(5 * m * m);
        for j in 0..m {
            for i in 0..m {
                let k = j * m + i;
                if j > 0 {
                    t.push((k, k - m, -self.cy));
                }
                if i > 0 {
                    t.push((k, k - 1, -self.cx));
                }
                t.push((k, k, self.center()));
                if i + 1 < m {
                    t.push((k, k + 1, -self.cx));
                }
                if j + 1 < m {
                    t.push((k, k + m, -self.cy));
                }
            }
        }
        CsrMatrix::from_triplets(m * m, m * m, &t)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Stencil(FivePoint),
    Sparse(CsrMatrix),
}

/// Square operator that counts its applications.
#[derive(Debug)]
pub struct LinearOperator {
    repr: Repr,
    applications: AtomicU64,
}

impl Clone for LinearOperator {
    fn clone(&self) -> Self {
        Self { repr: self.repr.clone(), applications: AtomicU64::new(self.apply_count()) }
    }
}

impl LinearOperator {
    pub fn stencil(domain: &Domain) -> Self {
        Self::from_repr(Repr::Stencil(FivePoint::new(domain)))
    }

    pub fn sparse(matrix: CsrMatrix) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols(), "operator must be square");
        Self::from_repr(Repr::Sparse(matrix))
    }

    fn from_repr(repr: Repr) -> Self {
        Self { repr, applications: AtomicU64::new(0) }
    }

    pub fn rows(&self) -> usize {
        match &self.repr {
            Repr::Stencil(s) => s.m * s.m,
            Repr::Sparse(a) => a.nrows(),
        }
    }

    pub fn cols(&self) -> usize {
        self.rows()
    }

    pub fn as_stencil(&self) -> Option<&FivePoint> {
        match &self.repr {
            Repr::Stencil(s) => Some(s),
            Repr::Sparse(_) => None,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Stencil(s) => vec![s.center(); s.m * s.m],
            Repr::Sparse(a) => a.diagonal(),
        }
    }

    pub fn to_csr(&self) -> CsrMatrix {
        match &self.repr {
            Repr::Stencil(s) => s.to_csr(),
            Repr::Sparse(a) => a.clone(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.to_csr().to_dense()
    }

    pub fn apply_count(&self) -> u64 {
        self.applications.load(Ordering::Relaxed)
    }

    pub fn reset_count(&self) {
        self.applications.store(0, Ordering::Relaxed);
    }
}

impl Operator for LinearOperator {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.rows());
        assert_eq!(y.len(), self.rows());
        self.applications.fetch_add(1, Ordering::Relaxed);
        match &self.repr {
            Repr::Stencil(s) => s.apply(x, y),
            Repr::Sparse(a) => a.mul_vec(x, y),
        }
    }

    fn applications(&self) -> u64 {
        self.apply_count()
    }
}
