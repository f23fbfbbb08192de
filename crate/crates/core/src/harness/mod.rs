//! Experiment runner: single cases, parameter sweeps, empirical `λ_min`
//! tuning and CSV/SVG output.
//!
//! Reported fine matvecs are the counter delta around the Krylov (or
//! stationary) solve. They include the driver's own products with `A`
//! (initial residual, one per step, the end-of-cycle true residual for
//! GMRES) and the smoother products inside each V-cycle. Eigenvalue
//! estimation, `λ_min` tuning and right-hand-side assembly are excluded.

mod config;
mod emit;
mod run;
mod sweep;

pub use config::{parse_config, CaseConfig, ConfigFile, Driver, Seeds, SweepSpec};
pub use emit::{read_csv, render_svg, sweep_records, write_beta_csv, write_csv, write_svgs, CsvRecord, CSV_COLUMNS};
pub use run::{default_lambda_min_candidates, run_case, tune_lambda_min_empirical, CaseOutcome, TuneResult};
pub use sweep::{sweep, GroupKey, SweepResult, SweepRow};
