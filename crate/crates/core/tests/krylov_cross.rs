use chebymg::discretization::{build_rhs, Domain, Factorization};
use chebymg::krylov::{arnoldi_basis, pcg, pgmres, GmresOptions};
use chebymg::multigrid::{CycleConfig, Hierarchy, MultigridPreconditioner};
use chebymg::smoothers::{estimate_lambda_max, ChebyshevConfig, Family};

fn setup(lx: f64, n: usize) -> (Domain, Hierarchy, f64) {
    let d = Domain::with_aspect(lx, n).unwrap();
    let h = Hierarchy::for_domain(&d, 2).unwrap();
    let lt = estimate_lambda_max(h.fine(), h.smoother(), 30, 0).unwrap();
    (d, h, lt)
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    num / den
}

#[test]
fn pcg_and_pgmres_agree_on_symmetric_cycles() {
    for lx in [1.0, 8.0] {
        let (d, h, lt) = setup(lx, 32);
        let rhs = build_rhs(h.fine(), &d, Some(3)).unwrap();
        let x0 = vec![0.0; h.dim()];
        for family in Family::ALL {
            let cfg = CycleConfig::full(2, ChebyshevConfig::new(family, 2, lt));
            let m = MultigridPreconditioner::new(&h, cfg).unwrap();
            let (xc, rc) = pcg(h.fine(), &m, &rhs.b, &x0, 1e-12, 500).unwrap();
            let opts = GmresOptions { tol: 1e-12, max_iters: 500, ..Default::default() };
            let (xg, rg) = pgmres(h.fine(), &m, &rhs.b, &x0, &opts).unwrap();
            assert!(rc.converged && rg.converged);
            assert!(rel_diff(&xc, &xg) <= 1e-8, "{family} lx={lx}");
        }
    }
}

#[test]
fn full_cycle_pcg_matches_direct_solve() {
    let (d, h, lt) = setup(1.0, 32);
    let rhs = build_rhs(h.fine(), &d, Some(1)).unwrap();
    let direct = Factorization::new(h.fine()).unwrap().solve(&rhs.b);
    let cfg = CycleConfig::full(2, ChebyshevConfig::new(Family::First, 2, lt));
    let m = MultigridPreconditioner::new(&h, cfg).unwrap();
    let (x, rep) = pcg(h.fine(), &m, &rhs.b, &vec![0.0; h.dim()], 1e-10, 200).unwrap();
    assert!(rep.converged);
    assert!(rel_diff(&x, &direct) <= 1e-8);
    assert!(rel_diff(&direct, &rhs.u_exact) <= 1e-10);
}

#[test]
fn arnoldi_basis_is_orthonormal() {
    let (d, h, lt) = setup(8.0, 32);
    let rhs = build_rhs(h.fine(), &d, Some(2)).unwrap();
    let cfg = CycleConfig::one_sided(3, ChebyshevConfig::new(Family::FourthOpt, 6, lt));
    let m = MultigridPreconditioner::new(&h, cfg).unwrap();
    let v = arnoldi_basis(h.fine(), &m, &rhs.b, 25, true);
    assert_eq!(v.len(), 26);
    for i in 0..v.len() {
        for j in 0..=i {
            let ip: f64 = v[i].iter().zip(&v[j]).map(|(a, b)| a * b).sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((ip - expect).abs() <= 1e-12, "({i},{j}) = {ip}");
        }
    }
}

#[test]
fn gmres_history_monotone_within_restarts() {
    let (d, h, lt) = setup(64.0, 32);
    let rhs = build_rhs(h.fine(), &d, Some(0)).unwrap();
    let cfg = CycleConfig::one_sided(1, ChebyshevConfig::new(Family::Fourth, 2, lt));
    let m = MultigridPreconditioner::new(&h, cfg).unwrap();
    let opts = GmresOptions { restart: 5, tol: 1e-8, max_iters: 400, ..Default::default() };
    let (_, rep) = pgmres(h.fine(), &m, &rhs.b, &vec![0.0; h.dim()], &opts).unwrap();
    assert!(rep.converged);
    assert!(rep.iterations > opts.restart, "want several restart windows");
    for window in rep.residual_history[1..].chunks(opts.restart) {
        assert!(window.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)), "{window:?}");
    }
}
