use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chebymg::analysis::{gamma_inverse, lambda_min_opt_bound, BoundSurface, GammaPair};
use chebymg::harness::{
    default_lambda_min_candidates, parse_config, run_case, sweep, sweep_records, tune_lambda_min_empirical,
    write_beta_csv, write_csv, write_svgs, CaseConfig, ConfigFile, CsvRecord, Seeds, SweepSpec,
};
use chebymg::smoothers::{Family, MAX_OPTIMIZED_ORDER};
use chebymg::Error;

#[derive(Parser)]
#[command(name = "chebymg", version, about = "Two-level multigrid with Chebyshev smoothers for the 2D Poisson problem")]
struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for the right-hand side, eigenvalue estimate and tuning.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single case.
    Run(CaseArgs),
    /// Run the grid from the config file (or the full study grid).
    Sweep {
        /// Record wall times (breaks byte-for-byte reproducibility).
        #[arg(long)]
        time: bool,
    },
    /// Lanczos estimate of the approximation-property constant.
    EstimateC(CaseArgs),
    /// Tables of γ⁻¹, V(C,k), C* and bound ratios.
    Bounds {
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Values of C at which to evaluate the bounds.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 4.0, 127.0, 3665.0])]
        c: Vec<f64>,
    },
    /// Empirical λ_min search for the tuned 1st-kind smoother.
    Tune(CaseArgs),
    /// Dump the optimized 4th-kind coefficients.
    Betas,
}

/// Overrides applied on top of the config file.
#[derive(Args)]
struct CaseArgs {
    #[arg(long)]
    lx: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    factor: Option<usize>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    cycle: Option<String>,
    #[arg(long)]
    driver: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    restart: Option<usize>,
    #[arg(long)]
    maxit: Option<usize>,
    #[arg(long)]
    lambda_min_mult: Option<f64>,
    #[arg(long)]
    estimate_c: bool,
}

impl CaseArgs {
    fn apply(&self, mut c: CaseConfig) -> chebymg::Result<CaseConfig> {
        if let Some(v) = self.lx {
            c.lx = v;
        }
        if let Some(v) = self.n {
            c.n = v;
        }
        if let Some(v) = self.factor {
            c.factor = v;
        }
        if let Some(v) = &self.family {
            c.family = v.parse()?;
        }
        if let Some(v) = self.k {
            c.k = v;
        }
        if let Some(v) = &self.cycle {
            c.cycle = v.parse()?;
        }
        if let Some(v) = &self.driver {
            c.driver = v.parse()?;
        }
        if let Some(v) = self.tol {
            c.tol = v;
        }
        if let Some(v) = self.restart {
            c.restart = v;
        }
        if let Some(v) = self.maxit {
            c.max_iters = v;
        }
        if self.lambda_min_mult.is_some() {
            c.lambda_min_mult = self.lambda_min_mult;
        }
        c.estimate_c |= self.estimate_c;
        c.validate()?;
        Ok(c)
    }
}

enum Failure {
    Config(String),
    Solver(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::InvalidDomain(_) | Error::IncompatibleCoarsening { .. } => {
                Failure::Config(e.to_string())
            }
            other => Failure::Solver(other.to_string()),
        }
    }
}

fn load_config(cli: &Cli) -> Result<ConfigFile, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => ConfigFile { case: CaseConfig::default(), sweep: None },
    };
    if let Some(seed) = cli.seed {
        cfg.case.seeds = Seeds::from_base(seed);
        if let Some(s) = &mut cfg.sweep {
            s.base.seeds = cfg.case.seeds;
        }
    }
    Ok(cfg)
}

/// Output sink: a file in `--out-dir`, or stdout.
fn sink(out_dir: Option<&Path>, name: &str) -> Result<Box<dyn Write>, Failure> {
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::Solver(format!("{}: {e}", dir.display())))?;
            let path = dir.join(name);
            let f = File::create(&path).map_err(|e| Failure::Solver(format!("{}: {e}", path.display())))?;
            Ok(Box::new(f))
        }
        None => Ok(Box::new(io::stdout())),
    }
}

fn real(cli: Cli) -> Result<(), Failure> {
    let cfg = load_config(&cli)?;
    let out_dir = cli.out_dir.as_deref();
    match &cli.command {
        Command::Run(args) => {
            let case = args.apply(cfg.case)?;
            let outcome = run_case(&case)?;
            write_csv(sink(out_dir, "run.csv")?, &[CsvRecord::from_outcome(&outcome, true)])?;
            if !outcome.report.converged {
                return Err(Failure::Solver(format!("{}: {}", case.case_id(), outcome.report.stop.name())));
            }
        }
        Command::Sweep { time } => {
            let mut spec = cfg.sweep.unwrap_or_else(|| SweepSpec::study(cfg.case.clone()));
            spec.record_time |= *time;
            let res = sweep(&spec)?;
            if cli.format != Format::Svg {
                write_csv(sink(out_dir, "sweep.csv")?, &sweep_records(&res))?;
            }
            if cli.format != Format::Csv {
                let dir = out_dir.ok_or_else(|| Failure::Config("SVG output needs --out-dir".into()))?;
                write_svgs(&res, dir)?;
            }
            let best: Vec<CsvRecord> = res.best_per_group().iter().map(|(_, r)| CsvRecord::from_row(r, false)).collect();
            let mut err = io::stderr();
            let _ = writeln!(err, "best per (L_x, factor, family, cycle):");
            let _ = write_csv(&mut err, &best);
            let failed = res.failures().count();
            if failed > 0 {
                let _ = writeln!(err, "{failed} of {} rows did not converge", res.rows.len());
            }
        }
        Command::EstimateC(args) => {
            let case = CaseConfig { estimate_c: true, ..args.apply(cfg.case)? };
            let outcome = run_case(&case)?;
            let mut w = csv::Writer::from_writer(sink(out_dir, "c_estimate.csv")?);
            w.write_record(["L_x", "n", "factor", "C_est"]).map_err(Error::from)?;
            w.write_record([
                case.lx.to_string(),
                case.n.to_string(),
                case.factor.to_string(),
                outcome.c_est.map(|c| c.to_string()).unwrap_or_default(),
            ])
            .map_err(Error::from)?;
            w.flush().map_err(Error::from)?;
        }
        Command::Bounds { kmax, c } => {
            let mut w = csv::Writer::from_writer(sink(out_dir, "bounds.csv")?);
            w.write_record(["family", "k", "lambda_min", "gamma_inv", "gamma_inv_2k", "C_star", "C", "V_full", "V_one_sided", "ratio"])
                .map_err(Error::from)?;
            for family in Family::ALL {
                for k in 1..=*kmax {
                    if family == Family::FourthOpt && 2 * k > MAX_OPTIMIZED_ORDER {
                        continue;
                    }
                    let lmin = if family == Family::FirstOptLambda { Some(lambda_min_opt_bound(k)?) } else { None };
                    let pair = GammaPair::new(family, k, lmin)?;
                    let cstar = pair.critical_c().map(|v| v.to_string()).unwrap_or_default();
                    let surface = BoundSurface { family, k, gamma_inv: gamma_inverse(family, k, lmin)? };
                    for &cv in c {
                        let v = surface.eval(cv)?;
                        let vs = (cv / (cv + pair.two_k)).sqrt();
                        w.write_record([
                            family.to_string(),
                            k.to_string(),
                            lmin.map(|l| l.to_string()).unwrap_or_default(),
                            pair.k.to_string(),
                            pair.two_k.to_string(),
                            cstar.clone(),
                            cv.to_string(),
                            v.to_string(),
                            vs.to_string(),
                            (v / vs).to_string(),
                        ])
                        .map_err(Error::from)?;
                    }
                }
            }
            w.flush().map_err(Error::from)?;
        }
        Command::Tune(args) => {
            let mut case = args.apply(cfg.case)?;
            case.family = Family::FirstOptLambda;
            let t = tune_lambda_min_empirical(&case, &default_lambda_min_candidates())?;
            let mut w = csv::Writer::from_writer(sink(out_dir, "tune.csv")?);
            w.write_record(["lambda_min_mult", "iterations", "fine_matvecs", "selected"]).map_err(Error::from)?;
            for (m, r) in &t.trials {
                w.write_record([
                    m.to_string(),
                    r.map(|r| r.0.to_string()).unwrap_or_default(),
                    r.map(|r| r.1.to_string()).unwrap_or_default(),
                    (*m == t.best).to_string(),
                ])
                .map_err(Error::from)?;
            }
            w.flush().map_err(Error::from)?;
        }
        Command::Betas => write_beta_csv(sink(out_dir, "betas.csv")?)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
