use crate::{Error, Result};

/// Rectangle `[0, lx] × [0, ly]` with `n` cells per side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    lx: f64,
    ly: f64,
    n: usize,
}

impl Domain {
    pub fn new(lx: f64, ly: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDomain(format!("need at least 2 cells per side, got {n}")));
        }
        if !(lx.is_finite() && lx > 0.0 && ly.is_finite() && ly > 0.0) {
            return Err(Error::InvalidDomain(format!("side lengths must be positive, got {lx} x {ly}")));
        }
        Ok(Self { lx, ly, n })
    }

    /// The aspect-ratio family used in the experiments: `L_y = 1`.
    pub fn with_aspect(lx: f64, n: usize) -> Result<Self> {
        Self::new(lx, 1.0, n)
    }

    pub fn lx(&self) -> f64 {
        self.lx
    }

    pub fn ly(&self) -> f64 {
        self.ly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hx(&self) -> f64 {
        self.lx / self.n as f64
    }

    pub fn hy(&self) -> f64 {
        self.ly / self.n as f64
    }

    /// Interior nodes per side, `n - 1`.
    pub fn interior_per_side(&self) -> usize {
        self.n - 1
    }

    pub fn unknowns(&self) -> usize {
        self.interior_per_side() * self.interior_per_side()
    }

    /// Coordinates of interior unknown `idx`.
    pub fn node(&self, idx: usize) -> (f64, f64) {
        let m = self.interior_per_side();
        let (i, j) = (idx % m + 1, idx / m + 1);
        (i as f64 * self.hx(), j as f64 * self.hy())
    }
}
