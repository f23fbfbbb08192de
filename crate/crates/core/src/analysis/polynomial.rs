use crate::smoothers::{beta_coefficients, Family, DEFAULT_LAMBDA_MIN_MULT};
use crate::{Error, Result};

/// Residual polynomial `p_k` of a Chebyshev smoother with `λ_max = 1`,
/// evaluated by running the smoother recurrence on the scalar problem
/// `λ x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualPolynomial {
    family: Family,
    order: usize,
    lambda_min: f64,
    betas: Vec<f64>,
}

impl ResidualPolynomial {
    /// `lambda_min` is only read by the 1st-kind families. `None` selects
    /// 0.1 for [`Family::First`] and the bound-optimal value for
    /// [`Family::FirstOptLambda`].
    pub fn new(family: Family, order: usize, lambda_min: Option<f64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("order-0 residual polynomial is identically 1".into()));
        }
        match family {
            Family::First => Self::first_kind(order, lambda_min.unwrap_or(DEFAULT_LAMBDA_MIN_MULT)),
            Family::FirstOptLambda => {
                let lmin = match lambda_min {
                    Some(l) => l,
                    None => super::lambda_min_opt_bound(order)?,
                };
                Ok(Self { family, ..Self::first_kind(order, lmin)? })
            }
            Family::Fourth => Ok(Self::fourth_kind(order, vec![1.0; order])),
            Family::FourthOpt => {
                let mut p = Self::fourth_kind(order, beta_coefficients(order)?.to_vec());
                p.family = Family::FourthOpt;
                Ok(p)
            }
        }
    }

    pub fn first_kind(order: usize, lambda_min: f64) -> Result<Self> {
        if !(lambda_min > 0.0 && lambda_min < 1.0) {
            return Err(Error::InvalidSmoother(format!("lambda_min = {lambda_min} must lie in (0, 1)")));
        }
        Ok(Self { family: Family::First, order, lambda_min, betas: Vec::new() })
    }

    /// 4th-kind polynomial with arbitrary step scalings; order `betas.len()`.
    pub fn fourth_kind(order: usize, betas: Vec<f64>) -> Self {
        assert_eq!(order, betas.len());
        Self { family: Family::Fourth, order, lambda_min: 0.0, betas }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lambda_min(&self) -> Option<f64> {
        self.family.is_first_kind().then_some(self.lambda_min)
    }

    /// Smoother output for scalar `λ x = b` from `x0`.
    fn run(&self, lambda: f64, b: f64, x0: f64) -> f64 {
        let k = self.order;
        let mut x = x0;
        if self.family.is_first_kind() {
            let theta = 0.5 * (1.0 + self.lambda_min);
            let delta = 0.5 * (1.0 - self.lambda_min);
            let sigma = theta / delta;
            let mut rho = 1.0 / sigma;
            let mut r = b - lambda * x;
            let mut d = r / theta;
            for _ in 1..k {
                x += d;
                r -= lambda * d;
                let rho_next = 1.0 / (2.0 * sigma - rho);
                d = rho_next * rho * d + 2.0 * rho_next / delta * r;
                rho = rho_next;
            }
            x + d
        } else {
            let mut r = b - lambda * x;
            let mut d = 4.0 / 3.0 * r;
            for i in 1..k {
                x += self.betas[i - 1] * d;
                r -= lambda * d;
                let fi = i as f64;
                d = (2.0 * fi - 1.0) / (2.0 * fi + 3.0) * d + (8.0 * fi + 4.0) / (2.0 * fi + 3.0) * r;
            }
            x + self.betas[k - 1] * d
        }
    }

    /// `p_k(λ)`: error reduction of the smoother on eigenvalue `λ` of `SA`.
    pub fn eval(&self, lambda: f64) -> f64 {
        self.run(lambda, 0.0, 1.0)
    }

    /// `s_k(λ)` with `p_k(λ) = 1 - λ s_k(λ)`: the smoother applied to `b = 1`
    /// from zero. Free of the cancellation in `1 - p_k` near `λ = 0`.
    pub fn step(&self, lambda: f64) -> f64 {
        self.run(lambda, 1.0, 0.0)
    }

    /// `λ p_k(λ)² / (1 - p_k(λ)²)`, continuous at `λ = 0`.
    pub fn gamma_integrand(&self, lambda: f64) -> f64 {
        let s = self.step(lambda);
        let p = 1.0 - lambda * s;
        let denom = s * (2.0 - lambda * s);
        if denom <= 0.0 {
            f64::INFINITY
        } else {
            p * p / denom
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_kind_order_one() {
        let p = ResidualPolynomial::new(Family::First, 1, Some(0.1)).unwrap();
        for lambda in [0.0, 0.2, 0.55, 1.0] {
            assert!((p.eval(lambda) - (1.0 - 2.0 * lambda / 1.1)).abs() < 1e-15);
        }
        assert_eq!(p.eval(0.0), 1.0);
    }

    #[test]
    fn first_kind_matches_chebyshev_ratio() {
        let lmin = 0.07;
        let p = ResidualPolynomial::first_kind(6, lmin).unwrap();
        let (theta, delta) = (0.5 * (1.0 + lmin), 0.5 * (1.0 - lmin));
        let cheb = |x: f64| {
            if x.abs() <= 1.0 {
                (6.0 * x.acos()).cos()
            } else {
                (6.0 * x.abs().acosh()).cosh() * x.signum().powi(6)
            }
        };
        for i in 0..=50 {
            let lambda = i as f64 / 50.0;
            let expect = cheb((theta - lambda) / delta) / cheb(theta / delta);
            assert!((p.eval(lambda) - expect).abs() < 1e-12, "λ={lambda}");
        }
    }

    #[test]
    fn fourth_kind_matches_closed_form() {
        // W_k(cos t) = sin((k + 1/2) t) / sin(t/2), p_k(λ) = W_k(1 - 2λ) / (2k + 1)
        for k in 1..=10 {
            let p = ResidualPolynomial::new(Family::Fourth, k, None).unwrap();
            for i in 1..=40 {
                let lambda = i as f64 / 40.0;
                let t = (1.0 - 2.0 * lambda).acos();
                let w = if t == 0.0 {
                    2.0 * k as f64 + 1.0
                } else {
                    ((k as f64 + 0.5) * t).sin() / (0.5 * t).sin()
                };
                let expect = w / (2.0 * k as f64 + 1.0);
                assert!((p.eval(lambda) - expect).abs() < 1e-12, "k={k} λ={lambda}");
            }
        }
    }

    #[test]
    fn normalized_at_zero_and_bounded() {
        for family in Family::ALL {
            for k in 1..=12 {
                let p = ResidualPolynomial::new(family, k, Some(0.1)).unwrap();
                assert_eq!(p.eval(0.0), 1.0);
                for i in 1..=10_000 {
                    let lambda = i as f64 / 10_000.0;
                    assert!(p.eval(lambda).abs() < 1.0, "{family} k={k} λ={lambda}");
                }
            }
        }
    }

    #[test]
    fn integrand_agrees_with_direct_formula() {
        let p = ResidualPolynomial::new(Family::FourthOpt, 5, None).unwrap();
        for lambda in [0.01, 0.3, 0.77, 1.0] {
            let v = p.eval(lambda);
            let direct = lambda * v * v / (1.0 - v * v);
            assert!((p.gamma_integrand(lambda) - direct).abs() <= 1e-12 * direct.max(1e-3));
        }
    }

    #[test]
    fn rejects_invalid() {
        assert!(ResidualPolynomial::new(Family::FourthOpt, 17, None).is_err());
        assert!(ResidualPolynomial::new(Family::First, 0, None).is_err());
        assert!(ResidualPolynomial::first_kind(3, 1.0).is_err());
    }
}
