use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use chebymg::analysis::{critical_c, gamma_inverse, GammaPair, ResidualPolynomial};
use chebymg::discretization::{Domain, LinearOperator};
use chebymg::multigrid::{a_norm, assemble_dense, assemble_error_propagators, CycleConfig, Hierarchy};
use chebymg::smoothers::{beta_coefficients, estimate_lambda_max, smooth, ChebyshevConfig, Family, Jacobi};

mod common;
use common::oracle;

fn dense_sa(a: &LinearOperator, s: &Jacobi) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_column_slice(s.inverse_diagonal())) * a.to_dense()
}

#[test]
fn smoother_matches_polynomial_oracle() {
    for lx in [1.0, 3.0] {
        let d = Domain::with_aspect(lx, 8).unwrap();
        let a = LinearOperator::stencil(&d);
        let s = Jacobi::new(&a).unwrap();
        let lt = estimate_lambda_max(&a, &s, 30, 0).unwrap();
        let sa = dense_sa(&a, &s);
        let zero = vec![0.0; a.rows()];
        for family in Family::ALL {
            for k in 1..=6 {
                let cfg = ChebyshevConfig::new(family, k, lt).with_lambda_min_mult(0.15);
                let g = assemble_dense(a.rows(), |x0| smooth(&a, &s, &zero, x0, &cfg)).unwrap();
                let p = oracle(family, k, cfg.lambda_max(), cfg.lambda_min()).eval_matrix(&sa);
                let err = (&g - &p).amax();
                assert!(err <= 1e-11, "{family} k={k} lx={lx}: {err:e}");
            }
        }
    }
}

#[test]
fn scalar_polynomials_match_oracle() {
    for family in Family::ALL {
        for k in 1..=8 {
            let p = ResidualPolynomial::new(family, k, Some(0.1)).unwrap();
            let q = oracle(family, k, 1.0, 0.1);
            for i in 0..=100 {
                let l = i as f64 / 100.0;
                assert!((p.eval(l) - q.eval(l)).abs() <= 1e-11, "{family} k={k} λ={l}: {} vs {}", p.eval(l), q.eval(l));
            }
        }
    }
}

#[test]
fn beta_spot_values() {
    assert_eq!(beta_coefficients(1).unwrap()[0], 1.125);
    assert_eq!(beta_coefficients(2).unwrap()[1], 1.26408905371085);
}

#[test]
fn optimized_fourth_kind_beats_plain_in_bound() {
    for k in 1..=16 {
        let opt = gamma_inverse(Family::FourthOpt, k, None).unwrap();
        let plain = gamma_inverse(Family::Fourth, k, None).unwrap();
        assert!(opt >= plain, "k={k}: {opt} < {plain}");
    }
}

fn norms_for(n: usize, lx: f64, cfg_of: impl Fn(f64) -> CycleConfig) -> (f64, f64, f64, f64) {
    let d = Domain::with_aspect(lx, n).unwrap();
    let h = Hierarchy::for_domain(&d, 2).unwrap();
    let lt = estimate_lambda_max(h.fine(), h.smoother(), 30, 0).unwrap();
    let cfg = cfg_of(lt);
    let props = assemble_error_propagators(&h, &cfg).unwrap();
    let a = h.fine().to_dense();
    (
        a_norm(&a, &props.e).unwrap(),
        a_norm(&a, &props.e_prime).unwrap(),
        a_norm(&a, &props.e_v).unwrap(),
        (&props.e_v - &props.e_prime * &props.e).amax(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn full_cycle_norm_is_square_of_half(n in prop::sample::select(vec![8usize, 16]),
                                         lx in prop::sample::select(vec![1.0f64, 4.0]),
                                         k in 1usize..=3) {
        let (e, e_prime, e_v, split) = norms_for(n, lx, |lt| CycleConfig::full(k, ChebyshevConfig::new(Family::First, k, lt)));
        prop_assert!(split <= 1e-12);
        prop_assert!((e - e_prime).abs() <= 1e-10);
        prop_assert!((e_v - e * e).abs() <= 1e-10, "‖E_V‖ = {e_v}, ‖E‖² = {}", e * e);
    }

    #[test]
    fn one_sided_cycle_norm_equals_half(n in prop::sample::select(vec![8usize, 16]),
                                        lx in prop::sample::select(vec![1.0f64, 4.0]),
                                        k in 1usize..=3) {
        let (e, _, e_v, _) = norms_for(n, lx, |lt| CycleConfig::one_sided(k, ChebyshevConfig::new(Family::First, 2 * k, lt)));
        prop_assert!((e_v - e).abs() <= 1e-10);
    }

    #[test]
    fn critical_c_separates_regimes(k in 1usize..=8, family in prop::sample::select(Family::ALL.to_vec())) {
        let pair = GammaPair::new(family, k, None).unwrap();
        let c = critical_c(family, k, None).unwrap();
        prop_assert!(pair.gap(2.0 * c) > 0.0);
        if c > 1.0 {
            prop_assert!(pair.gap(c).abs() <= 1e-12);
            prop_assert!(pair.gap((c / 2.0).max(1.0)) < 0.0);
        }
    }

    #[test]
    fn bound_monotone_in_c(c1 in 1.0f64..1e6, scale in 1.0001f64..100.0, k in 1usize..=8) {
        for family in Family::ALL {
            let g = gamma_inverse(family, k, None).unwrap();
            let v = |c: f64| c / (c + g);
            prop_assert!(v(c1 * scale) > v(c1));
        }
    }
}
