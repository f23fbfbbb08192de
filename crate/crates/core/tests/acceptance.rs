//! Acceptance checks at desk scale. Prints one PASS/FAIL line per
//! criterion (sub-checks indented beneath it) and exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};

use chebymg::analysis::{
    estimate_c, gamma_inverse, gamma_inverse_numeric, gamma_inverse_opt_asymptote, spectral_radius_sa, GammaPair,
    LanczosOptions, ResidualPolynomial,
};
use chebymg::discretization::{build_rhs, Domain, Factorization, LinearOperator};
use chebymg::harness::{run_case, sweep, sweep_records, write_csv, CaseConfig, Driver, SweepSpec};
use chebymg::krylov::{pcg, pgmres, GmresOptions};
use chebymg::multigrid::{
    a_norm, assemble_dense, assemble_error_propagators, preconditioner_apply, CycleConfig, CycleKind, Hierarchy,
    MultigridPreconditioner,
};
use chebymg::smoothers::{beta_coefficients, estimate_lambda_max, smooth, ChebyshevConfig, Family, Jacobi};

mod common;

struct Report {
    lines: Vec<String>,
    ok: bool,
}

impl Report {
    fn new() -> Self {
        Self { lines: Vec::new(), ok: true }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.ok &= ok;
        self.lines.push(format!("    [{}] {detail}", if ok { "ok" } else { "FAIL" }));
    }
}

fn within(got: f64, expect: f64, rel: f64) -> bool {
    (got - expect).abs() <= rel * expect
}

fn table_case(r: &mut Report, cfg: CaseConfig, its: usize, mv: u64, dit: usize, rel: f64) {
    let label = format!("L_x={} n/n_c={} {} {:?}", cfg.lx, cfg.factor, cfg.family, cfg.orders());
    match run_case(&cfg) {
        Ok(o) => {
            let rep = &o.report;
            let ok = rep.converged
                && rep.relative_residual() <= cfg.tol
                && rep.iterations.abs_diff(its) <= dit
                && within(rep.fine_matvecs as f64, mv as f64, rel);
            r.check(
                ok,
                format!(
                    "{label}: {} iterations, {} matvecs (reference {its}, {mv}; band ±{dit}, ±{:.0}%){}",
                    rep.iterations,
                    rep.fine_matvecs,
                    rel * 100.0,
                    o.lambda_min_mult.map(|l| format!(", tuned λ_min = {l:.4}·λ̃")).unwrap_or_default()
                ),
            );
        }
        Err(e) => r.check(false, format!("{label}: {e}")),
    }
}

fn case(lx: f64, factor: usize, family: Family, kind: CycleKind, k: usize) -> CaseConfig {
    CaseConfig { lx, factor, family, cycle: kind, k, driver: Driver::Pgmres, ..Default::default() }
}

fn criterion_1() -> Report {
    let mut r = Report::new();
    table_case(&mut r, case(1.0, 2, Family::FirstOptLambda, CycleKind::Full, 2), 4, 23, 2, 0.15);
    table_case(&mut r, case(8.0, 2, Family::Fourth, CycleKind::OneSided, 7), 5, 79, 2, 0.15);
    table_case(&mut r, case(64.0, 2, Family::Fourth, CycleKind::OneSided, 9), 15, 299, 2, 0.15);
    table_case(&mut r, case(128.0, 2, Family::FourthOpt, CycleKind::OneSided, 9), 16, 319, 2, 0.15);
    r
}

fn criterion_2() -> Report {
    let mut r = Report::new();
    table_case(&mut r, case(1.0, 16, Family::Fourth, CycleKind::OneSided, 8), 6, 107, 2, 0.15);
    table_case(&mut r, case(128.0, 16, Family::FourthOpt, CycleKind::OneSided, 9), 18, 359, 3, 0.20);
    r
}

fn c_hat(lx: f64, n: usize) -> (f64, Hierarchy, f64) {
    let h = Hierarchy::for_domain(&Domain::with_aspect(lx, n).unwrap(), 2).unwrap();
    let fine = Factorization::new(h.fine()).unwrap();
    let rho = spectral_radius_sa(h.fine(), h.smoother(), 0).unwrap();
    let c = estimate_c(&h, &fine, rho, &LanczosOptions::default()).unwrap().c;
    (c, h, rho)
}

fn criterion_3() -> Report {
    let mut r = Report::new();
    for (lx, expect) in [(1.0, 4.0), (8.0, 127.0), (64.0, 3665.0)] {
        let (c, _, _) = c_hat(lx, 128);
        r.check(within(c, expect, 0.15), format!("n=128 L_x={lx}: Ĉ = {c:.4} (reference {expect}, ±15%)"));
    }
    for n in [16, 32] {
        for lx in [1.0, 8.0, 64.0] {
            let (c, h, rho) = c_hat(lx, n);
            // S A with S = D⁻¹/ρ; D is constant so the symmetric form has the same spectrum
            let d = DMatrix::from_diagonal(&DVector::from_column_slice(h.smoother().inverse_diagonal()));
            let sa = d * h.fine().to_dense() / rho;
            let eig = ((&sa + sa.transpose()) * 0.5).symmetric_eigenvalues();
            let kappa = eig.max() / eig.min();
            r.check(1.0 <= c && c <= kappa, format!("n={n} L_x={lx}: 1 ≤ Ĉ = {c:.4} ≤ κ(SA) = {kappa:.4}"));
        }
    }
    r
}

fn criterion_4() -> Report {
    let mut r = Report::new();
    let (mut worst_full, mut worst_half) = (0.0f64, 0.0f64);
    for n in [8, 16] {
        for lx in [1.0, 4.0] {
            let h = Hierarchy::for_domain(&Domain::with_aspect(lx, n).unwrap(), 2).unwrap();
            let lt = estimate_lambda_max(h.fine(), h.smoother(), 30, 0).unwrap();
            let a = h.fine().to_dense();
            for k in 1..=3 {
                let full = CycleConfig::full(k, ChebyshevConfig::new(Family::First, k, lt));
                let p = assemble_error_propagators(&h, &full).unwrap();
                let (e, ev) = (a_norm(&a, &p.e).unwrap(), a_norm(&a, &p.e_v).unwrap());
                worst_full = worst_full.max((ev - e * e).abs());
                let half = CycleConfig::one_sided(k, ChebyshevConfig::new(Family::First, 2 * k, lt));
                let p = assemble_error_propagators(&h, &half).unwrap();
                let (e, ev) = (a_norm(&a, &p.e).unwrap(), a_norm(&a, &p.e_v).unwrap());
                worst_half = worst_half.max((ev - e).abs());
            }
        }
    }
    r.check(worst_full <= 1e-10, format!("max |‖E_V‖_A − ‖E‖_A²| = {worst_full:.2e} over (k,k), k ≤ 3"));
    r.check(worst_half <= 1e-10, format!("max |‖E_V′‖_A − ‖E‖_A| = {worst_half:.2e} over (2k,0), k ≤ 3"));
    r
}

fn criterion_5() -> Report {
    let mut r = Report::new();
    let mut worst = 0.0f64;
    for k in 1..=8 {
        let num = gamma_inverse_numeric(&ResidualPolynomial::new(Family::Fourth, k, None).unwrap()).unwrap();
        let exact = 4.0 * (k * (k + 1)) as f64 / 3.0;
        worst = worst.max((num - exact).abs() / exact);
    }
    r.check(worst <= 1e-6, format!("4th kind: numeric vs 4k(k+1)/3, worst relative error {worst:.2e} for k ≤ 8"));
    let mut worst = 0.0f64;
    for k in 3..=16 {
        let g = gamma_inverse(Family::FourthOpt, k, None).unwrap();
        let asym = gamma_inverse_opt_asymptote(k);
        worst = worst.max((g - asym).abs() / asym);
    }
    r.check(worst <= 0.05, format!("optimized 4th kind vs asymptote, worst relative gap {:.2}% for 3 ≤ k ≤ 16", worst * 100.0));
    r
}

fn criterion_6() -> Report {
    let mut r = Report::new();
    for family in Family::ALL {
        let mut bad = Vec::new();
        let mut boundary = Vec::new();
        for k in 1..=8 {
            let pair = GammaPair::new(family, k, None).unwrap();
            let c = match pair.critical_c() {
                Ok(c) => c,
                Err(e) => {
                    bad.push(format!("k={k}: {e}"));
                    continue;
                }
            };
            let residual = pair.gap(c).abs();
            if residual > 1e-12 {
                if c == 1.0 && pair.gap(1.0) > 0.0 {
                    boundary.push(format!("k={k} (gap at C=1 is {:.3})", pair.gap(1.0)));
                } else {
                    bad.push(format!("k={k}: residual {residual:.2e}"));
                }
            }
            if !(pair.gap(2.0 * c) > 0.0) {
                bad.push(format!("k={k}: one-sided not favoured at 2C*"));
            }
            if c > 1.0 && !(pair.gap((c / 2.0).max(1.0)) < 0.0) {
                bad.push(format!("k={k}: full not favoured at max(1, C*/2)"));
            }
        }
        let mut detail = format!("{family}: k = 1..8");
        if !boundary.is_empty() {
            detail += &format!("; no root in [1, ∞), one-sided already ahead at C=1: {}", boundary.join(", "));
        }
        if !bad.is_empty() {
            detail += &format!("; {}", bad.join(", "));
        }
        r.check(bad.is_empty() && boundary.is_empty(), detail);
    }
    r
}

fn criterion_7() -> Report {
    let mut r = Report::new();
    let h = Hierarchy::for_domain(&Domain::with_aspect(8.0, 64).unwrap(), 2).unwrap();
    let lt = estimate_lambda_max(h.fine(), h.smoother(), 30, 0).unwrap();
    let rhs = build_rhs(h.fine(), &Domain::with_aspect(8.0, 64).unwrap(), Some(0)).unwrap();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for family in Family::ALL {
        for k in 1..=10 {
            for kind in [CycleKind::Full, CycleKind::OneSided] {
                let cfg = CycleConfig::of_kind(kind, k, ChebyshevConfig::new(family, k, lt));
                if cfg.validate().is_err() {
                    continue;
                }
                h.fine().reset_count();
                preconditioner_apply(&h, &cfg, &rhs.b).unwrap();
                let count = h.fine().apply_count();
                checked += 1;
                if count != 2 * k as u64 {
                    mismatches.push(format!("{family} {kind} k={k}: {count}"));
                }
            }
        }
    }
    r.check(
        mismatches.is_empty(),
        format!("{checked} configurations (optimized 4th kind limited to orders ≤ 16): {}", if mismatches.is_empty() { "all exactly 2k".into() } else { mismatches.join(", ") }),
    );
    r
}

fn criterion_8() -> Report {
    let mut r = Report::new();
    let spec = SweepSpec { factor: vec![16], ..SweepSpec::study(CaseConfig::default()) };
    let t = Instant::now();
    let res = sweep(&spec).unwrap();
    let secs = t.elapsed().as_secs_f64();
    for &lx in &spec.lx {
        let one_sided = res.best_where(|c| {
            c.lx == lx && c.cycle == CycleKind::OneSided && matches!(c.family, Family::Fourth | Family::FourthOpt)
        });
        let full_first = res.best_where(|c| c.lx == lx && c.cycle == CycleKind::Full && c.family == Family::First);
        match (one_sided, full_first) {
            (Some(a), Some(b)) => {
                let (ma, mb) = (a.converged().unwrap().report.fine_matvecs, b.converged().unwrap().report.fine_matvecs);
                r.check(ma < mb, format!("L_x={lx}: best one-sided 4th kind {} = {ma} matvecs vs best full 1st kind {} = {mb}", a.config.case_id(), b.config.case_id()));
            }
            _ => r.check(false, format!("L_x={lx}: missing converged rows")),
        }
    }
    r.check(secs <= 600.0, format!("{} rows in {secs:.1} s (limit 600 s)", res.rows.len()));
    r
}

fn criterion_9() -> Report {
    let mut r = Report::new();
    let mut worst = 0.0f64;
    for n in [4, 8] {
        for lx in [1.0, 3.0] {
            let a = LinearOperator::stencil(&Domain::with_aspect(lx, n).unwrap());
            let s = Jacobi::new(&a).unwrap();
            let lt = estimate_lambda_max(&a, &s, 30, 0).unwrap();
            let sa = DMatrix::from_diagonal(&DVector::from_column_slice(s.inverse_diagonal())) * a.to_dense();
            let zero = vec![0.0; a.rows()];
            for family in Family::ALL {
                for k in 1..=6 {
                    let cfg = ChebyshevConfig::new(family, k, lt);
                    let g = assemble_dense(a.rows(), |x0| smooth(&a, &s, &zero, x0, &cfg)).unwrap();
                    let p = common::oracle(family, k, cfg.lambda_max(), cfg.lambda_min()).eval_matrix(&sa);
                    worst = worst.max((&g - &p).amax());
                }
            }
        }
    }
    r.check(worst <= 1e-11, format!("smoother propagator vs p_k(SA), worst entry error {worst:.2e} (all families, k ≤ 6, n ≤ 8)"));
    let (b1, b2) = (beta_coefficients(1).unwrap()[0], beta_coefficients(2).unwrap()[1]);
    r.check(b1 == 1.125 && b2 == 1.26408905371085, format!("β₁⁽¹⁾ = {b1}, β₂⁽²⁾ = {b2}"));
    r
}

fn criterion_10() -> Report {
    let mut r = Report::new();
    let d = Domain::with_aspect(8.0, 64).unwrap();
    let h = Hierarchy::for_domain(&d, 2).unwrap();
    let lt = estimate_lambda_max(h.fine(), h.smoother(), 30, 0).unwrap();
    let rhs = build_rhs(h.fine(), &d, Some(0)).unwrap();
    let x0 = vec![0.0; h.dim()];
    let mut worst = 0.0f64;
    for family in Family::ALL {
        let m = MultigridPreconditioner::new(&h, CycleConfig::full(2, ChebyshevConfig::new(family, 2, lt))).unwrap();
        let (xc, _) = pcg(h.fine(), &m, &rhs.b, &x0, 1e-12, 500).unwrap();
        let (xg, _) = pgmres(h.fine(), &m, &rhs.b, &x0, &GmresOptions { tol: 1e-12, ..Default::default() }).unwrap();
        let diff = xc.iter().zip(&xg).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
            / xg.iter().map(|v| v * v).sum::<f64>().sqrt();
        worst = worst.max(diff);
    }
    r.check(worst <= 1e-8, format!("PCG vs PGMRES on (2,2) cycles, worst relative difference {worst:.2e}"));

    let m = MultigridPreconditioner::new(&h, CycleConfig::one_sided(1, ChebyshevConfig::new(Family::Fourth, 2, lt))).unwrap();
    let opts = GmresOptions { restart: 10, tol: 1e-10, ..Default::default() };
    let (_, rep) = pgmres(h.fine(), &m, &rhs.b, &x0, &opts).unwrap();
    let monotone = rep.residual_history[1..]
        .chunks(opts.restart)
        .all(|w| w.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-12)));
    r.check(monotone && rep.converged, format!("GMRES(10) history non-increasing within each restart window ({} iterations)", rep.iterations));

    let cfg = CaseConfig { lx: 8.0, n: 64, family: Family::FirstOptLambda, ..Default::default() };
    let (a, b) = (run_case(&cfg).unwrap(), run_case(&cfg).unwrap());
    let same_run = a.report.residual_history.iter().zip(&b.report.residual_history).all(|(x, y)| x.to_bits() == y.to_bits())
        && a.report.fine_matvecs == b.report.fine_matvecs
        && a.lambda_tilde.to_bits() == b.lambda_tilde.to_bits();
    let spec = SweepSpec {
        lx: vec![1.0, 64.0],
        family: Family::ALL.to_vec(),
        k: vec![1, 3],
        cycle: vec![CycleKind::Full, CycleKind::OneSided],
        ..SweepSpec::new(CaseConfig { n: 32, ..Default::default() })
    };
    let emit = || {
        let mut buf = Vec::new();
        write_csv(&mut buf, &sweep_records(&sweep(&spec).unwrap())).unwrap();
        buf
    };
    r.check(same_run && emit() == emit(), "repeated runs bit-identical; repeated sweep CSV byte-identical".into());
    r
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Report); 10] = [
        ("table reproduction, n/n_c = 2", criterion_1),
        ("table reproduction, n/n_c = 16", criterion_2),
        ("approximation constant estimates", criterion_3),
        ("error propagator norm identities", criterion_4),
        ("γ⁻¹ closed form and asymptote", criterion_5),
        ("critical C*", criterion_6),
        ("per-application cost identity", criterion_7),
        ("one-sided dominance at n/n_c = 16", criterion_8),
        ("smoother polynomial oracle and β table", criterion_9),
        ("solver sanity and reproducibility", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let report = run();
        let status = if report.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status} {name} ({:.1} s)", i + 1, t.elapsed().as_secs_f64());
        for line in &report.lines {
            println!("{line}");
        }
        failed += usize::from(!report.ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
