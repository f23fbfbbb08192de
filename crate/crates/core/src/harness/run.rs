use crate::analysis::{estimate_c, spectral_radius_sa, LanczosOptions};
use crate::discretization::{build_rhs, random_perturbation, Domain, Factorization};
use crate::krylov::{pcg, pgmres, stationary, GmresOptions, SolveReport};
use crate::multigrid::{CycleConfig, Hierarchy, MultigridPreconditioner};
use crate::smoothers::{estimate_lambda_max, ChebyshevConfig, Family, DEFAULT_LAMBDA_MIN_MULT};
use crate::{Error, Result};

use super::{CaseConfig, Driver};

/// Everything a case produced besides the solution itself.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseOutcome {
    pub config: CaseConfig,
    pub lambda_tilde: f64,
    /// `λ_min / λ̃` actually used; `None` for the 4th kind.
    pub lambda_min_mult: Option<f64>,
    pub c_est: Option<f64>,
    pub report: SolveReport,
}

/// Problem, hierarchy and `λ̃` for a case; everything before the solve.
pub(crate) struct Setup {
    pub domain: Domain,
    pub hierarchy: Hierarchy,
    pub lambda_tilde: f64,
}

impl Setup {
    pub fn new(cfg: &CaseConfig) -> Result<Self> {
        cfg.validate()?;
        let domain = Domain::with_aspect(cfg.lx, cfg.n)?;
        let hierarchy = Hierarchy::for_domain(&domain, cfg.factor)?;
        let lambda_tilde = estimate_lambda_max(hierarchy.fine(), hierarchy.smoother(), cfg.power_steps, cfg.seeds.eigen)?;
        Ok(Self { domain, hierarchy, lambda_tilde })
    }

    fn cycle(&self, cfg: &CaseConfig, lambda_min_mult: f64) -> CycleConfig {
        let smoother = ChebyshevConfig::new(cfg.family, cfg.k, self.lambda_tilde)
            .with_lambda_max_mult(cfg.lambda_max_mult)
            .with_lambda_min_mult(lambda_min_mult);
        CycleConfig::of_kind(cfg.cycle, cfg.k, smoother)
    }

    /// Solve `A x = b` from zero with the configured driver. The report's
    /// matvec count brackets only this call.
    fn solve(&self, cfg: &CaseConfig, lambda_min_mult: f64, b: &[f64]) -> Result<SolveReport> {
        let m = MultigridPreconditioner::new(&self.hierarchy, self.cycle(cfg, lambda_min_mult))?;
        let a = self.hierarchy.fine();
        let x0 = vec![0.0; b.len()];
        let (_, report) = match cfg.driver {
            Driver::Pcg => pcg(a, &m, b, &x0, cfg.tol, cfg.max_iters)?,
            Driver::Pgmres => {
                let opts = GmresOptions { restart: cfg.restart, tol: cfg.tol, max_iters: cfg.max_iters, ..Default::default() };
                pgmres(a, &m, b, &x0, &opts)?
            }
            Driver::MgSolver => stationary(a, &m, b, &x0, cfg.tol, cfg.max_iters)?,
        };
        Ok(report)
    }

    fn tune(&self, cfg: &CaseConfig, candidates: &[f64]) -> Result<TuneResult> {
        if candidates.is_empty() {
            return Err(Error::InvalidArgument("no λ_min candidates".into()));
        }
        let b = random_perturbation(&self.domain, cfg.seeds.tuning);
        let mut trials = Vec::with_capacity(candidates.len());
        let mut best: Option<(usize, u64, f64)> = None;
        for &mult in candidates {
            let outcome = self.solve(cfg, mult, &b).ok().filter(|r| r.converged);
            let key = outcome.as_ref().map(|r| (r.iterations, r.fine_matvecs));
            if let Some((its, mv)) = key {
                if best.map_or(true, |(bi, bm, _)| (its, mv) < (bi, bm)) {
                    best = Some((its, mv, mult));
                }
            }
            trials.push((mult, key));
        }
        match best {
            Some((_, _, mult)) => Ok(TuneResult { best: mult, trials }),
            None => Err(Error::TuningFailed(format!("{}: no candidate converged", cfg.case_id()))),
        }
    }

    fn lambda_min_mult(&self, cfg: &CaseConfig) -> Result<Option<f64>> {
        Ok(match (cfg.family, cfg.lambda_min_mult) {
            (Family::First | Family::FirstOptLambda, Some(l)) => Some(l),
            (Family::First, None) => Some(DEFAULT_LAMBDA_MIN_MULT),
            (Family::FirstOptLambda, None) => Some(self.tune(cfg, &default_lambda_min_candidates())?.best),
            _ => None,
        })
    }

    /// `Ĉ` from 20 Lanczos steps with `S` normalized by a long power
    /// iteration.
    pub fn estimate_c(&self, seed: u64) -> Result<f64> {
        let h = &self.hierarchy;
        let fine = Factorization::new(h.fine())?;
        let rho = spectral_radius_sa(h.fine(), h.smoother(), seed)?;
        Ok(estimate_c(h, &fine, rho, &LanczosOptions { seed, ..Default::default() })?.c)
    }
}

/// Per-candidate `(iterations, matvecs)` of an empirical `λ_min` search;
/// `None` marks a candidate that did not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub best: f64,
    pub trials: Vec<(f64, Option<(usize, u64)>)>,
}

/// 16 multipliers log-spaced over `[0.0125, 0.4]`.
pub fn default_lambda_min_candidates() -> Vec<f64> {
    (0..16).map(|i| 0.0125 * 32f64.powf(i as f64 / 15.0)).collect()
}

/// Run one case: build the seeded problem, estimate `λ̃`, pick `λ_min`
/// (tuning if asked), solve, and optionally estimate `C`.
///
/// Non-convergence is reported through [`SolveReport::stop`]; only setup
/// failures and breakdowns are errors.
pub fn run_case(cfg: &CaseConfig) -> Result<CaseOutcome> {
    let setup = Setup::new(cfg)?;
    let c_est = if cfg.estimate_c { Some(setup.estimate_c(cfg.seeds.eigen)?) } else { None };
    run_with_setup(cfg, &setup, c_est)
}

pub(crate) fn run_with_setup(cfg: &CaseConfig, setup: &Setup, c_est: Option<f64>) -> Result<CaseOutcome> {
    let lambda_min_mult = setup.lambda_min_mult(cfg)?;
    let rhs = build_rhs(setup.hierarchy.fine(), &setup.domain, Some(cfg.seeds.rhs))?;
    let report = setup.solve(cfg, lambda_min_mult.unwrap_or(DEFAULT_LAMBDA_MIN_MULT), &rhs.b)?;
    Ok(CaseOutcome { config: cfg.clone(), lambda_tilde: setup.lambda_tilde, lambda_min_mult, c_est, report })
}

/// Pick `λ_min / λ̃` for a 1st-kind case by solving a seeded random
/// right-hand side with every candidate. Minimizes iterations, then matvecs;
/// ties keep the earlier candidate.
pub fn tune_lambda_min_empirical(cfg: &CaseConfig, candidates: &[f64]) -> Result<TuneResult> {
    if cfg.family != Family::FirstOptLambda {
        return Err(Error::InvalidArgument(format!("λ_min tuning needs first_opt_lambda, got {}", cfg.family)));
    }
    Setup::new(cfg)?.tune(cfg, candidates)
}
