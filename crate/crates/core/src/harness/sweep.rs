use std::collections::HashMap;

use rayon::prelude::*;

use super::run::{run_with_setup, Setup};
use super::{CaseConfig, CaseOutcome, SweepSpec};
use crate::multigrid::CycleKind;
use crate::smoothers::Family;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub config: CaseConfig,
    pub outcome: std::result::Result<CaseOutcome, Error>,
}

impl SweepRow {
    pub fn converged(&self) -> Option<&CaseOutcome> {
        self.outcome.as_ref().ok().filter(|o| o.report.converged)
    }
}

/// Rows compared within a group: same problem, family and cycle shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupKey {
    pub lx: f64,
    pub factor: usize,
    pub family: Family,
    pub cycle: CycleKind,
}

impl GroupKey {
    pub fn of(c: &CaseConfig) -> Self {
        Self { lx: c.lx, factor: c.factor, family: c.family, cycle: c.cycle }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Converged row with the fewest fine matvecs among those matching
    /// `pred`; ties go to fewer iterations, then the smaller `k`, then the
    /// earlier row.
    pub fn best_where(&self, pred: impl Fn(&CaseConfig) -> bool) -> Option<&SweepRow> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(&r.config))
            .filter_map(|(i, r)| r.converged().map(|o| ((o.report.fine_matvecs, o.report.iterations, r.config.k, i), r)))
            .min_by_key(|(key, _)| *key)
            .map(|(_, r)| r)
    }

    /// Best row per [`GroupKey`], groups in order of first appearance.
    /// Groups with no converged row are omitted.
    pub fn best_per_group(&self) -> Vec<(GroupKey, &SweepRow)> {
        let mut keys: Vec<GroupKey> = Vec::new();
        for r in &self.rows {
            let g = GroupKey::of(&r.config);
            if !keys.contains(&g) {
                keys.push(g);
            }
        }
        keys.into_iter().filter_map(|g| self.best_where(|c| GroupKey::of(c) == g).map(|r| (g, r))).collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.converged().is_none())
    }
}

/// Run every case of `spec`. Rows run in parallel, each on its own problem
/// instance, and come back in [`SweepSpec::cases`] order. `Ĉ` is computed
/// once per `(L_x, factor)` when the base case asks for it.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let cases = spec.cases()?;
    let mut c_cache: HashMap<(u64, usize), Option<f64>> = HashMap::new();
    if spec.base.estimate_c {
        let mut problems: Vec<&CaseConfig> = Vec::new();
        for c in &cases {
            if !problems.iter().any(|p| p.lx == c.lx && p.factor == c.factor) {
                problems.push(c);
            }
        }
        let estimates: Vec<Option<f64>> = problems
            .par_iter()
            .map(|c| Setup::new(c).and_then(|s| s.estimate_c(c.seeds.eigen)).ok())
            .collect();
        for (c, e) in problems.iter().zip(estimates) {
            c_cache.insert((c.lx.to_bits(), c.factor), e);
        }
    }
    let rows = cases
        .into_par_iter()
        .map(|config| {
            let c_est = c_cache.get(&(config.lx.to_bits(), config.factor)).copied().flatten();
            let outcome = Setup::new(&config).and_then(|s| run_with_setup(&config, &s, c_est));
            SweepRow { config, outcome }
        })
        .collect();
    Ok(SweepResult { spec: spec.clone(), rows })
}
