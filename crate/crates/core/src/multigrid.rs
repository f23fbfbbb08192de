//! Two-level V-cycle with Chebyshev pre/post smoothing and an exact coarse
//! solve.

use nalgebra::DMatrix;

use crate::discretization::{galerkin_coarse, Domain, Factorization, LinearOperator, Prolongation};
use crate::smoothers::{smooth_into, ChebyshevConfig, Jacobi};
use crate::{axpy, Error, Operator, Result};

/// Largest fine dimension accepted by the dense assembly helpers.
pub const DENSE_LIMIT: usize = 1024;

#[derive(Debug, Clone)]
pub struct Hierarchy {
    fine: LinearOperator,
    coarse: LinearOperator,
    prolongation: Prolongation,
    coarse_solver: Factorization,
    smoother: Jacobi,
}

impl Hierarchy {
    /// Galerkin coarse operator, its Cholesky factor and the fine Jacobi
    /// smoother, all built from `fine` and `prolongation`.
    pub fn new(fine: LinearOperator, prolongation: Prolongation) -> Result<Self> {
        let coarse = galerkin_coarse(&fine, &prolongation)?;
        let coarse_solver = Factorization::new(&coarse)?;
        let smoother = Jacobi::new(&fine)?;
        Ok(Self { fine, coarse, prolongation, coarse_solver, smoother })
    }

    /// Fine 5-point operator on `domain`, coarse grid `n / factor`.
    pub fn for_domain(domain: &Domain, factor: usize) -> Result<Self> {
        if factor < 2 || domain.n() % factor != 0 {
            return Err(Error::IncompatibleCoarsening { fine: domain.n(), coarse: domain.n() / factor.max(1) });
        }
        let p = Prolongation::new(domain.n(), domain.n() / factor)?;
        Self::new(LinearOperator::stencil(domain), p)
    }

    pub fn fine(&self) -> &LinearOperator {
        &self.fine
    }

    pub fn coarse(&self) -> &LinearOperator {
        &self.coarse
    }

    pub fn prolongation(&self) -> &Prolongation {
        &self.prolongation
    }

    pub fn coarse_solver(&self) -> &Factorization {
        &self.coarse_solver
    }

    pub fn smoother(&self) -> &Jacobi {
        &self.smoother
    }

    pub fn dim(&self) -> usize {
        self.fine.rows()
    }

    /// `x += P A_c⁻¹ Pᵀ (b - A x)`
    pub fn coarse_correct(&self, b: &[f64], x: &mut [f64]) {
        let n = x.len();
        let mut r = vec![0.0; n];
        if x.iter().all(|&v| v == 0.0) {
            r.copy_from_slice(b);
        } else {
            self.fine.apply(x, &mut r);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri = bi - *ri;
            }
        }
        let mut rc = vec![0.0; self.prolongation.coarse_dim()];
        self.prolongation.restrict(&r, &mut rc);
        self.coarse_solver.solve_in_place(&mut rc);
        self.prolongation.prolong(&rc, &mut r);
        axpy(1.0, &r, x);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    /// `(k, k)`: symmetric pre- and post-smoothing.
    Full,
    /// `(2k, 0)`: post-smoothing dropped, pre-smoothing order doubled.
    OneSided,
}

impl CycleKind {
    pub fn name(self) -> &'static str {
        match self {
            CycleKind::Full => "full",
            CycleKind::OneSided => "one_sided",
        }
    }

    /// `(k_pre, k_post)` with the same per-cycle cost as a full `(k, k)` cycle.
    pub fn orders(self, k: usize) -> (usize, usize) {
        match self {
            CycleKind::Full => (k, k),
            CycleKind::OneSided => (2 * k, 0),
        }
    }
}

impl std::str::FromStr for CycleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(CycleKind::Full),
            "one_sided" | "half" => Ok(CycleKind::OneSided),
            other => Err(Error::Config(format!("unknown cycle `{other}`"))),
        }
    }
}

impl std::fmt::Display for CycleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Orders of the pre- and post-smoother; the family and eigenvalue bounds
/// come from `smoother` (its `order` field is ignored).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig {
    pub k_pre: usize,
    pub k_post: usize,
    pub smoother: ChebyshevConfig,
}

impl CycleConfig {
    pub fn new(k_pre: usize, k_post: usize, smoother: ChebyshevConfig) -> Self {
        Self { k_pre, k_post, smoother }
    }

    pub fn full(k: usize, smoother: ChebyshevConfig) -> Self {
        Self::of_kind(CycleKind::Full, k, smoother)
    }

    pub fn one_sided(k: usize, smoother: ChebyshevConfig) -> Self {
        Self::of_kind(CycleKind::OneSided, k, smoother)
    }

    pub fn of_kind(kind: CycleKind, k: usize, smoother: ChebyshevConfig) -> Self {
        let (k_pre, k_post) = kind.orders(k);
        Self::new(k_pre, k_post, smoother)
    }

    pub fn kind(&self) -> CycleKind {
        if self.k_post == 0 {
            CycleKind::OneSided
        } else {
            CycleKind::Full
        }
    }

    pub fn pre(&self) -> ChebyshevConfig {
        self.smoother.with_order(self.k_pre)
    }

    pub fn post(&self) -> ChebyshevConfig {
        self.smoother.with_order(self.k_post)
    }

    pub fn validate(&self) -> Result<()> {
        self.pre().validate()?;
        self.post().validate()
    }
}

fn check_len(h: &Hierarchy, v: &[f64]) -> Result<()> {
    if v.len() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), got: v.len() });
    }
    Ok(())
}

/// One V-cycle from `x0`. With `x0 = 0` it costs exactly `k_pre + k_post`
/// fine-grid products when `k_pre ≥ 1`.
pub fn v_cycle(h: &Hierarchy, cfg: &CycleConfig, b: &[f64], x0: &[f64]) -> Result<Vec<f64>> {
    check_len(h, b)?;
    check_len(h, x0)?;
    cfg.validate()?;
    let mut x = x0.to_vec();
    v_cycle_in_place(h, cfg, b, &mut x)?;
    Ok(x)
}

fn v_cycle_in_place(h: &Hierarchy, cfg: &CycleConfig, b: &[f64], x: &mut [f64]) -> Result<()> {
    if cfg.k_pre > 0 {
        smooth_into(&h.fine, &h.smoother, b, x, &cfg.pre())?;
    }
    h.coarse_correct(b, x);
    if cfg.k_post > 0 {
        smooth_into(&h.fine, &h.smoother, b, x, &cfg.post())?;
    }
    Ok(())
}

/// `z = M r`: one V-cycle on `A z = r` from zero.
pub fn preconditioner_apply(h: &Hierarchy, cfg: &CycleConfig, r: &[f64]) -> Result<Vec<f64>> {
    v_cycle(h, cfg, r, &vec![0.0; r.len()])
}

/// A V-cycle as a linear operator, for the Krylov drivers.
#[derive(Debug, Clone, Copy)]
pub struct MultigridPreconditioner<'a> {
    hierarchy: &'a Hierarchy,
    cfg: CycleConfig,
}

impl<'a> MultigridPreconditioner<'a> {
    pub fn new(hierarchy: &'a Hierarchy, cfg: CycleConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self { hierarchy, cfg })
    }

    pub fn config(&self) -> &CycleConfig {
        &self.cfg
    }
}

impl Operator for MultigridPreconditioner<'_> {
    fn dim(&self) -> usize {
        self.hierarchy.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        v_cycle_in_place(self.hierarchy, &self.cfg, x, y).expect("cycle configuration validated at construction");
    }
}

/// Columns `Op(e_j)` of a linear map given as a closure.
pub fn assemble_dense(n: usize, mut column: impl FnMut(&[f64]) -> Result<Vec<f64>>) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let c = column(&e)?;
        m.set_column(j, &nalgebra::DVector::from_vec(c));
        e[j] = 0.0;
    }
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct ErrorPropagators {
    /// Pre-smoothing then coarse correction: `π_f G`.
    pub e: DMatrix<f64>,
    /// Coarse correction then post-smoothing: `G' π_f`.
    pub e_prime: DMatrix<f64>,
    /// The full cycle.
    pub e_v: DMatrix<f64>,
}

/// Error propagators of the cycle, assembled by running the live V-cycle on
/// `b = 0` from each unit vector.
pub fn assemble_error_propagators(h: &Hierarchy, cfg: &CycleConfig) -> Result<ErrorPropagators> {
    let n = h.dim();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge { dim: n, limit: DENSE_LIMIT });
    }
    let zero = vec![0.0; n];
    let pre_only = CycleConfig { k_post: 0, ..*cfg };
    let post_only = CycleConfig { k_pre: 0, ..*cfg };
    Ok(ErrorPropagators {
        e: assemble_dense(n, |x0| v_cycle(h, &pre_only, &zero, x0))?,
        e_prime: assemble_dense(n, |x0| v_cycle(h, &post_only, &zero, x0))?,
        e_v: assemble_dense(n, |x0| v_cycle(h, cfg, &zero, x0))?,
    })
}

/// `‖M‖_A = ‖Lᵀ M L⁻ᵀ‖₂` with `A = L Lᵀ`.
pub fn a_norm(a: &DMatrix<f64>, m: &DMatrix<f64>) -> Result<f64> {
    let chol = nalgebra::Cholesky::new(a.clone()).ok_or(Error::NotPositiveDefinite { index: 0, pivot: f64::NAN })?;
    let l = chol.l();
    let xt = l
        .solve_lower_triangular(&m.transpose())
        .ok_or_else(|| Error::InvalidArgument("singular Cholesky factor".into()))?;
    let b = l.transpose() * xt.transpose();
    Ok(b.singular_values().max())
}
