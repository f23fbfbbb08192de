use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::{CaseOutcome, Driver, SweepResult, SweepRow};
use crate::multigrid::CycleKind;
use crate::smoothers::{BetaTable, Family};
use crate::{Error, Result};

pub const CSV_COLUMNS: [&str; 16] = [
    "case_id",
    "L_x",
    "factor",
    "family",
    "k_pre",
    "k_post",
    "cycle",
    "driver",
    "iterations",
    "fine_matvecs",
    "rho",
    "C_est",
    "lambda_tilde",
    "lambda_min_mult",
    "converged",
    "time_ms",
];

/// One CSV line. Optional fields are empty in the file.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRecord {
    pub case_id: String,
    pub lx: f64,
    pub factor: usize,
    pub family: Family,
    pub k_pre: usize,
    pub k_post: usize,
    pub cycle: CycleKind,
    pub driver: Driver,
    pub iterations: Option<usize>,
    pub fine_matvecs: Option<u64>,
    pub rho: Option<f64>,
    pub c_est: Option<f64>,
    pub lambda_tilde: Option<f64>,
    pub lambda_min_mult: Option<f64>,
    pub converged: bool,
    pub time_ms: Option<f64>,
}

impl CsvRecord {
    pub fn from_outcome(o: &CaseOutcome, record_time: bool) -> Self {
        Self::from_row(&SweepRow { config: o.config.clone(), outcome: Ok(o.clone()) }, record_time)
    }

    pub fn from_row(row: &SweepRow, record_time: bool) -> Self {
        let c = &row.config;
        let (k_pre, k_post) = c.orders();
        let mut r = Self {
            case_id: c.case_id(),
            lx: c.lx,
            factor: c.factor,
            family: c.family,
            k_pre,
            k_post,
            cycle: c.cycle,
            driver: c.driver,
            iterations: None,
            fine_matvecs: None,
            rho: None,
            c_est: None,
            lambda_tilde: None,
            lambda_min_mult: None,
            converged: false,
            time_ms: None,
        };
        if let Ok(o) = &row.outcome {
            r.iterations = Some(o.report.iterations);
            r.fine_matvecs = Some(o.report.fine_matvecs);
            r.rho = o.report.rho;
            r.c_est = o.c_est;
            r.lambda_tilde = Some(o.lambda_tilde);
            r.lambda_min_mult = o.lambda_min_mult;
            r.converged = o.report.converged;
            r.time_ms = record_time.then(|| o.report.wall_time.as_secs_f64() * 1e3);
        }
        r
    }

    fn fields(&self) -> Vec<String> {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        vec![
            self.case_id.clone(),
            self.lx.to_string(),
            self.factor.to_string(),
            self.family.to_string(),
            self.k_pre.to_string(),
            self.k_post.to_string(),
            self.cycle.to_string(),
            self.driver.to_string(),
            opt(self.iterations),
            opt(self.fine_matvecs),
            opt(self.rho),
            opt(self.c_est),
            opt(self.lambda_tilde),
            opt(self.lambda_min_mult),
            self.converged.to_string(),
            opt(self.time_ms),
        ]
    }

    fn parse(rec: &csv::StringRecord) -> Result<Self> {
        if rec.len() != CSV_COLUMNS.len() {
            return Err(Error::Io(format!("expected {} columns, got {}", CSV_COLUMNS.len(), rec.len())));
        }
        fn req<T: std::str::FromStr>(s: &str, col: &str) -> Result<T> {
            s.parse().map_err(|_| Error::Io(format!("column {col}: cannot parse `{s}`")))
        }
        fn opt<T: std::str::FromStr>(s: &str, col: &str) -> Result<Option<T>> {
            if s.is_empty() {
                Ok(None)
            } else {
                req(s, col).map(Some)
            }
        }
        let f = |i: usize| &rec[i];
        Ok(Self {
            case_id: f(0).to_string(),
            lx: req(f(1), "L_x")?,
            factor: req(f(2), "factor")?,
            family: f(3).parse()?,
            k_pre: req(f(4), "k_pre")?,
            k_post: req(f(5), "k_post")?,
            cycle: f(6).parse()?,
            driver: f(7).parse()?,
            iterations: opt(f(8), "iterations")?,
            fine_matvecs: opt(f(9), "fine_matvecs")?,
            rho: opt(f(10), "rho")?,
            c_est: opt(f(11), "C_est")?,
            lambda_tilde: opt(f(12), "lambda_tilde")?,
            lambda_min_mult: opt(f(13), "lambda_min_mult")?,
            converged: req(f(14), "converged")?,
            time_ms: opt(f(15), "time_ms")?,
        })
    }
}

/// Header plus one line per record. Floats use the shortest decimal that
/// parses back to the same value.
pub fn write_csv<W: Write>(out: W, records: &[CsvRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != CSV_COLUMNS {
        return Err(Error::Io(format!("unexpected CSV header {header:?}")));
    }
    rd.records().map(|r| CsvRecord::parse(&r?)).collect()
}

pub fn sweep_records(res: &SweepResult) -> Vec<CsvRecord> {
    res.rows.iter().map(|r| CsvRecord::from_row(r, res.spec.record_time)).collect()
}

/// `k, i, beta` for every tabulated optimized coefficient.
pub fn write_beta_csv<W: Write>(out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "i", "beta"])?;
    for (k, i, b) in BetaTable.rows() {
        w.write_record([k.to_string(), i.to_string(), b.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 300.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

fn panel(svg: &mut String, x0: f64, title: &str, series: &[Series]) {
    let pts = series.iter().flat_map(|s| s.points.iter());
    let (mut xmin, mut xmax, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &(x, y) in pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymax = ymax.max(y);
    }
    if !xmin.is_finite() {
        (xmin, xmax, ymax) = (0.0, 1.0, 1.0);
    }
    if xmax == xmin {
        xmax = xmin + 1.0;
    }
    let ymax = if ymax > 0.0 { ymax * 1.05 } else { 1.0 };
    let (pw, ph) = (PANEL_W - 2.0 * MARGIN, PANEL_H - 2.0 * MARGIN);
    let sx = |x: f64| x0 + MARGIN + (x - xmin) / (xmax - xmin) * pw;
    let sy = |y: f64| MARGIN + ph - y / ymax * ph;
    let _ = writeln!(
        svg,
        r#"<rect x="{}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#,
        x0 + MARGIN
    );
    let _ = writeln!(svg, r#"<text x="{}" y="30" text-anchor="middle" font-size="14">{title}</text>"#, x0 + PANEL_W / 2.0);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">k</text>"#,
        x0 + PANEL_W / 2.0,
        PANEL_H - 12.0
    );
    for t in 0..=4 {
        let y = ymax * t as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.1}" text-anchor="end" font-size="10">{:.0}</text>"#,
            x0 + MARGIN - 4.0,
            sy(y) + 3.0,
            y
        );
    }
    for (i, s) in series.iter().enumerate() {
        if s.points.is_empty() {
            continue;
        }
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(svg, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, path.join(" "));
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="10" fill="{color}">{}</text>"#,
            x0 + MARGIN + 6.0,
            MARGIN + 14.0 + 12.0 * i as f64,
            s.label
        );
    }
}

/// Two side-by-side line plots for one `(L_x, factor)` problem: matvecs and
/// iterations against `k`, one line per family and cycle. Only converged
/// rows are drawn.
pub fn render_svg(res: &SweepResult, lx: f64, factor: usize) -> String {
    let mut labels: Vec<(Family, CycleKind)> = Vec::new();
    for r in res.rows.iter().filter(|r| r.config.lx == lx && r.config.factor == factor) {
        let key = (r.config.family, r.config.cycle);
        if !labels.contains(&key) {
            labels.push(key);
        }
    }
    let build = |metric: fn(&CaseOutcome) -> f64| -> Vec<Series> {
        labels
            .iter()
            .map(|&(family, cycle)| Series {
                label: format!("{family} {cycle}"),
                points: res
                    .rows
                    .iter()
                    .filter(|r| {
                        r.config.lx == lx && r.config.factor == factor && r.config.family == family && r.config.cycle == cycle
                    })
                    .filter_map(|r| r.converged().map(|o| (r.config.k as f64, metric(o))))
                    .collect(),
            })
            .collect()
    };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{PANEL_H}" viewBox="0 0 {} {PANEL_H}">"#,
        2.0 * PANEL_W,
        2.0 * PANEL_W
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    panel(&mut svg, 0.0, &format!("fine matvecs, L_x={lx}, n/n_c={factor}"), &build(|o| o.report.fine_matvecs as f64));
    panel(&mut svg, PANEL_W, &format!("iterations, L_x={lx}, n/n_c={factor}"), &build(|o| o.report.iterations as f64));
    svg.push_str("</svg>\n");
    svg
}

/// One SVG per `(L_x, factor)` in `dir`; returns the paths written.
pub fn write_svgs(res: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut problems: Vec<(f64, usize)> = Vec::new();
    for r in &res.rows {
        if !problems.contains(&(r.config.lx, r.config.factor)) {
            problems.push((r.config.lx, r.config.factor));
        }
    }
    problems
        .into_iter()
        .map(|(lx, factor)| {
            let path = dir.join(format!("sweep_Lx{lx}_f{factor}.svg"));
            fs::write(&path, render_svg(res, lx, factor))?;
            Ok(path)
        })
        .collect()
}
