use std::fmt;
use std::str::FromStr;

use crate::multigrid::CycleKind;
use crate::smoothers::{Family, DEFAULT_LAMBDA_MAX_MULT, DEFAULT_POWER_STEPS};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Driver {
    Pcg,
    Pgmres,
    /// The V-cycle iterated as a stationary method.
    MgSolver,
}

impl Driver {
    pub fn name(self) -> &'static str {
        match self {
            Driver::Pcg => "pcg",
            Driver::Pgmres => "pgmres",
            Driver::MgSolver => "mg_solver",
        }
    }
}

impl FromStr for Driver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "pcg" => Ok(Driver::Pcg),
            "pgmres" | "gmres" => Ok(Driver::Pgmres),
            "mg_solver" | "mg" => Ok(Driver::MgSolver),
            other => Err(Error::Config(format!("unknown driver `{other}`"))),
        }
    }
}

impl fmt::Display for Driver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seeds {
    pub rhs: u64,
    pub eigen: u64,
    pub tuning: u64,
}

impl Seeds {
    /// All seeds derived from one value; tuning gets its own stream.
    pub fn from_base(seed: u64) -> Self {
        Self { rhs: seed, eigen: seed, tuning: seed.wrapping_add(1) }
    }
}

impl Default for Seeds {
    fn default() -> Self {
        Self::from_base(0)
    }
}

/// One solver run on the `n × n` grid over `[0, L_x] × [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseConfig {
    pub lx: f64,
    pub n: usize,
    /// Coarse grid is `n / factor`.
    pub factor: usize,
    pub family: Family,
    pub k: usize,
    pub cycle: CycleKind,
    pub driver: Driver,
    pub tol: f64,
    pub restart: usize,
    pub max_iters: usize,
    pub seeds: Seeds,
    pub power_steps: usize,
    pub lambda_max_mult: f64,
    /// `λ_min / λ̃` for the 1st kind. `None` means 0.1 for `first` and
    /// empirical tuning for `first_opt_lambda`.
    pub lambda_min_mult: Option<f64>,
    /// Also run the Lanczos estimate of `C`.
    pub estimate_c: bool,
}

impl Default for CaseConfig {
    fn default() -> Self {
        Self {
            lx: 1.0,
            n: 128,
            factor: 2,
            family: Family::Fourth,
            k: 2,
            cycle: CycleKind::Full,
            driver: Driver::Pgmres,
            tol: 1e-6,
            restart: 30,
            max_iters: 1000,
            seeds: Seeds::default(),
            power_steps: DEFAULT_POWER_STEPS,
            lambda_max_mult: DEFAULT_LAMBDA_MAX_MULT,
            lambda_min_mult: None,
            estimate_c: false,
        }
    }
}

impl CaseConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.lx > 0.0 && self.lx.is_finite()) {
            return bad(format!("L_x = {} must be positive", self.lx));
        }
        if self.factor < 2 || self.n % self.factor != 0 || self.n / self.factor < 2 {
            return bad(format!("factor {} must divide n = {} leaving a coarse grid of at least 2", self.factor, self.n));
        }
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.cycle == CycleKind::OneSided && self.driver == Driver::Pcg {
            return bad("the one-sided cycle is not symmetric; use pgmres or mg_solver".into());
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("tol = {} must lie in (0, 1)", self.tol));
        }
        if self.restart == 0 || self.max_iters == 0 || self.power_steps == 0 {
            return bad("restart, maxit and power_steps must be positive".into());
        }
        if !(self.lambda_max_mult > 0.0) {
            return bad("lambda_max_mult must be positive".into());
        }
        if let Some(l) = self.lambda_min_mult {
            if !(l > 0.0 && l < self.lambda_max_mult) {
                return bad(format!("lambda_min_mult = {l} must lie in (0, lambda_max_mult)"));
            }
        }
        Ok(())
    }

    pub fn orders(&self) -> (usize, usize) {
        self.cycle.orders(self.k)
    }

    /// Stable identifier, unique within a sweep.
    pub fn case_id(&self) -> String {
        let (pre, post) = self.orders();
        format!("Lx{}_f{}_{}_{}-{}_{}", self.lx, self.factor, self.family, pre, post, self.driver)
    }
}

/// Cross product `{L_x} × {factor} × {family} × {k} × {cycle}` around a base
/// case.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: CaseConfig,
    pub lx: Vec<f64>,
    pub factor: Vec<usize>,
    pub family: Vec<Family>,
    pub k: Vec<usize>,
    pub cycle: Vec<CycleKind>,
    /// Write `time_ms`; off keeps the CSV byte-for-byte reproducible.
    pub record_time: bool,
}

impl SweepSpec {
    pub fn new(base: CaseConfig) -> Self {
        Self {
            lx: vec![base.lx],
            factor: vec![base.factor],
            family: vec![base.family],
            k: vec![base.k],
            cycle: vec![base.cycle],
            base,
            record_time: false,
        }
    }

    /// The grid of the study: four aspect ratios, both coarsening factors,
    /// every family, `k = 1..10`, both cycles.
    pub fn study(base: CaseConfig) -> Self {
        Self {
            lx: vec![1.0, 8.0, 64.0, 128.0],
            factor: vec![2, 16],
            family: Family::ALL.to_vec(),
            k: (1..=10).collect(),
            cycle: vec![CycleKind::Full, CycleKind::OneSided],
            ..Self::new(base)
        }
    }

    /// Cases in a fixed nesting order (`L_x` outermost, cycle innermost).
    pub fn cases(&self) -> Result<Vec<CaseConfig>> {
        let mut out = Vec::new();
        for &lx in &self.lx {
            for &factor in &self.factor {
                for &family in &self.family {
                    for &k in &self.k {
                        for &cycle in &self.cycle {
                            let c = CaseConfig { lx, factor, family, k, cycle, ..self.base.clone() };
                            c.validate()?;
                            out.push(c);
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Config("sweep grid is empty".into()));
        }
        Ok(out)
    }
}

/// Parsed configuration file: a base case and, if any `sweep.*` key was
/// present, a sweep around it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub case: CaseConfig,
    pub sweep: Option<SweepSpec>,
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Config(format!("`{key}`: cannot parse `{}`", v.trim())))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(Error::Config(format!("`{key}`: expected a boolean, got `{other}`"))),
    }
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    let items: Vec<T> = v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse(key, s)).collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::Config(format!("`{key}`: empty list")));
    }
    Ok(items)
}

/// Comma list whose items may be inclusive ranges `a..b`.
fn parse_int_list(key: &str, v: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (parse(key, a)?, parse(key, b.trim_start_matches('='))?);
                if a > b {
                    return Err(Error::Config(format!("`{key}`: empty range `{item}`")));
                }
                out.extend(a..=b);
            }
            None => out.push(parse(key, item)?),
        }
    }
    if out.is_empty() {
        return Err(Error::Config(format!("`{key}`: empty list")));
    }
    Ok(out)
}

/// Parse `key = value` lines with dotted keys. `#` starts a comment.
///
/// Case keys: `case.Lx`, `case.n`, `case.factor`, `case.family`, `case.k`,
/// `case.cycle`, `case.driver`, `case.tol`, `case.restart`, `case.maxit`,
/// `case.seed` (all seeds), `case.seed.rhs`, `case.seed.eigen`,
/// `case.seed.tuning`, `case.power_steps`, `case.lambda_max_mult`,
/// `case.lambda_min_mult`, `case.estimate_c`.
///
/// Sweep keys take comma lists (`k` also accepts `a..b`): `sweep.Lx`,
/// `sweep.factor`, `sweep.family`, `sweep.k`, `sweep.cycle`, plus
/// `sweep.record_time`. Unset sweep axes default to the base case value.
pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let mut case = CaseConfig::default();
    let mut sweep_keys: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if key.starts_with("sweep.") {
            sweep_keys.push((key.to_string(), value.to_string()));
            continue;
        }
        match key {
            "case.Lx" | "case.lx" => case.lx = parse(key, value)?,
            "case.n" => case.n = parse(key, value)?,
            "case.factor" => case.factor = parse(key, value)?,
            "case.family" => case.family = value.parse()?,
            "case.k" => case.k = parse(key, value)?,
            "case.cycle" => case.cycle = value.parse()?,
            "case.driver" => case.driver = value.parse()?,
            "case.tol" => case.tol = parse(key, value)?,
            "case.restart" => case.restart = parse(key, value)?,
            "case.maxit" => case.max_iters = parse(key, value)?,
            "case.seed" => case.seeds = Seeds::from_base(parse(key, value)?),
            "case.seed.rhs" => case.seeds.rhs = parse(key, value)?,
            "case.seed.eigen" => case.seeds.eigen = parse(key, value)?,
            "case.seed.tuning" => case.seeds.tuning = parse(key, value)?,
            "case.power_steps" => case.power_steps = parse(key, value)?,
            "case.lambda_max_mult" => case.lambda_max_mult = parse(key, value)?,
            "case.lambda_min_mult" => case.lambda_min_mult = Some(parse(key, value)?),
            "case.estimate_c" => case.estimate_c = parse_bool(key, value)?,
            _ => return Err(Error::Config(format!("line {}: unknown key `{key}`", lineno + 1))),
        }
    }
    case.validate()?;
    if sweep_keys.is_empty() {
        return Ok(ConfigFile { case, sweep: None });
    }
    let mut sweep = SweepSpec::new(case.clone());
    for (key, value) in &sweep_keys {
        let (key, value) = (key.as_str(), value.as_str());
        match key {
            "sweep.Lx" | "sweep.lx" => sweep.lx = parse_list(key, value)?,
            "sweep.factor" => sweep.factor = parse_int_list(key, value)?,
            "sweep.family" => sweep.family = parse_list(key, value)?,
            "sweep.k" => sweep.k = parse_int_list(key, value)?,
            "sweep.cycle" => sweep.cycle = parse_list(key, value)?,
            "sweep.record_time" => sweep.record_time = parse_bool(key, value)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
    }
    sweep.cases()?;
    Ok(ConfigFile { case, sweep: Some(sweep) })
}
