//! Exterior kernel mass `B(d) = int_d^inf e^{-lambda t} t^{-1-beta} dt`.
//!
//! `B1(i) = B(x_i - a)` and `B2(i) = B(b - x_i)` enter the diagonal of the
//! stiffness matrix. Evaluation depends on the parameters:
//!
//! * `lambda = 0`: `d^-beta / beta`.
//! * `lambda > 0, beta != 1`: integration by parts twice leaves
//!   `lambda^beta Gamma(-beta)` plus the finite integral
//!   `int_0^d e^{-lambda t} t^{1-beta} dt`, done by Gauss–Jacobi with weight
//!   `(1 + xi)^(1-beta)`. Past `lambda d = 1/2` the same quantity,
//!   `lambda^beta Gamma(-beta, lambda d)`, comes from a continued fraction.
//! * `lambda > 0, beta = 1`, `d >= 1/(2 lambda)`: `t = 1/tau` turns the tail
//!   into `int_{lambda/K}^{1/d} e^{-lambda/tau} dtau` (Gauss–Legendre).
//! * `lambda > 0, beta = 1`, `d < 1/(2 lambda)`:
//!   `e^{-lambda d}/d - lambda E1(lambda d)` with the series for `E1`.

use crate::params::{Grid, SchemeParams};
use crate::quadrature::{gauss_legendre, jacobi_gauss_rule, QuadratureRule};
use crate::special::{exp_integral_tail_series, gamma_fn, reciprocal_lower_limit, upper_incomplete_gamma_cf};

/// Gauss points used for every finite integral inside the tail formulas.
pub const TAIL_QUADRATURE_POINTS: usize = 64;

/// Above this `lambda d` the integration-by-parts form of the `beta != 1` tail
/// cancels (its terms are `O(1)` while the result is `O(e^{-lambda d})`), so
/// `lambda^beta Gamma(-beta, lambda d)` is evaluated by continued fraction.
pub const TAIL_CONTINUED_FRACTION_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone)]
enum Method {
    Untempered,
    PowerLaw { rule: QuadratureRule, gamma_term: f64 },
    Logarithmic { legendre: QuadratureRule },
}

/// Evaluates the unnormalized tail mass `B(d)` for fixed parameters. The
/// quadrature rules are built once at construction.
#[derive(Debug, Clone)]
pub struct TailIntegrator {
    beta: f64,
    lambda: f64,
    method: Method,
}

impl TailIntegrator {
    pub fn new(params: &SchemeParams) -> Self {
        Self::with_points(params, TAIL_QUADRATURE_POINTS)
    }

    pub fn with_points(params: &SchemeParams, points: usize) -> Self {
        let (beta, lambda) = (params.beta, params.lambda);
        let method = if lambda == 0.0 {
            Method::Untempered
        } else if params.is_log_case() {
            Method::Logarithmic {
                legendre: gauss_legendre(points),
            }
        } else {
            let gamma = gamma_fn(-beta).expect("beta in (0,2) minus {1} avoids the Gamma poles");
            Method::PowerLaw {
                rule: jacobi_gauss_rule(points, 0.0, 1.0 - beta),
                gamma_term: lambda.powf(beta) * gamma,
            }
        };
        Self { beta, lambda, method }
    }

    /// `int_d^inf e^{-lambda t} t^{-1-beta} dt` for `d > 0`.
    pub fn eval(&self, d: f64) -> f64 {
        debug_assert!(d > 0.0);
        let (b, l) = (self.beta, self.lambda);
        match &self.method {
            Method::Untempered => d.powf(-b) / b,
            Method::PowerLaw { .. } if l * d > TAIL_CONTINUED_FRACTION_THRESHOLD => {
                l.powf(b) * upper_incomplete_gamma_cf(-b, l * d)
            }
            Method::PowerLaw { rule, gamma_term } => {
                let decay = (-l * d).exp();
                let finite = rule.integrate_power_weighted(d, |t| (-l * t).exp());
                let k = b * (1.0 - b);
                decay / (b * d.powf(b)) + l / k * decay * d.powf(1.0 - b) + gamma_term + l * l / k * finite
            }
            Method::Logarithmic { legendre } => {
                if d >= 0.5 / l {
                    let lower = reciprocal_lower_limit(l, d);
                    legendre.integrate_on(lower, 1.0 / d, |tau| (-l / tau).exp())
                } else {
                    let e1 = exp_integral_tail_series(l * d).expect("positive argument");
                    (-l * d).exp() / d - l * e1
                }
            }
        }
    }
}

/// `B1(i) = int_{-inf}^a e^{lambda (y - x_i)} / (x_i - y)^(1+beta) dy`,
/// unnormalized. `1 <= i <= M`.
pub fn tail_integral_left(i: usize, params: &SchemeParams, grid: &Grid) -> f64 {
    assert!((1..=grid.m).contains(&i), "row {i} outside 1..={}", grid.m);
    TailIntegrator::new(params).eval(grid.dist_left(i))
}

/// `B2(i) = int_b^inf e^{lambda (x_i - y)} / (y - x_i)^(1+beta) dy`,
/// unnormalized. `1 <= i <= M`.
pub fn tail_integral_right(i: usize, params: &SchemeParams, grid: &Grid) -> f64 {
    assert!((1..=grid.m).contains(&i), "row {i} outside 1..={}", grid.m);
    TailIntegrator::new(params).eval(grid.dist_right(i))
}

/// `(B1(i), B2(i))` for all rows `i = 1..=M` (indexed from 0).
pub fn all_tails(params: &SchemeParams, grid: &Grid) -> (Vec<f64>, Vec<f64>) {
    let integrator = TailIntegrator::new(params);
    let left: Vec<f64> = (1..=grid.m).map(|i| integrator.eval(grid.dist_left(i))).collect();
    // dist_right(i) == dist_left(M+1-i) bitwise
    let right = left.iter().rev().copied().collect();
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tail(beta: f64, lambda: f64, d: f64) -> f64 {
        let params = if beta < 1.0 {
            SchemeParams::new(beta, lambda, 0, 0)
        } else {
            SchemeParams::new(beta, lambda, 1, 1)
        }
        .unwrap();
        TailIntegrator::new(&params).eval(d)
    }

    #[test]
    fn untempered_closed_form() {
        assert_relative_eq!(tail(0.5, 0.0, 0.25), 4.0, max_relative = 1e-15);
        assert_relative_eq!(tail(1.0, 0.0, 0.5), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn reference_values() {
        // 30-digit adaptive quadrature of the defining integral
        assert_relative_eq!(tail(0.5, 3.0, 0.5), 0.119_866_574_956_380_91, max_relative = 1e-12);
        assert_relative_eq!(tail(1.0, 3.0, 0.05), 12.820_774_516_940_327, max_relative = 1e-12);
        assert_relative_eq!(tail(1.5, 0.5, 0.3), 2.932_306_297_793_888, max_relative = 1e-12);
    }

    #[test]
    fn doubling_points_changes_nothing() {
        for &(b, l) in &[(0.3, 0.5), (0.5, 3.0), (1.0, 3.0), (1.5, 3.0), (1.9, 0.5)] {
            let params = SchemeParams::new(b, l, 1, 1).unwrap();
            let lo = TailIntegrator::with_points(&params, 64);
            let hi = TailIntegrator::with_points(&params, 128);
            for &d in &[1e-4, 0.01, 0.2, 0.9, 2.0] {
                assert_relative_eq!(lo.eval(d), hi.eval(d), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn continued_fraction_seam() {
        for &b in &[0.2, 0.5, 0.9, 1.3, 1.8] {
            let params = SchemeParams::new(b, 2.0, 1, 1).unwrap();
            let tails = TailIntegrator::new(&params);
            let d = TAIL_CONTINUED_FRACTION_THRESHOLD / 2.0;
            let (below, above) = (tails.eval(d * (1.0 - 1e-14)), tails.eval(d * (1.0 + 1e-14)));
            assert_relative_eq!(below, above, max_relative = 1e-11);
        }
    }

    #[test]
    fn large_distance_stays_accurate() {
        // lambda^beta Gamma(-beta, lambda d) at beta = 1/2, lambda = 3, d = 10
        // (30-digit quadrature)
        let expected = 9.407_525_269_756_543e-16;
        assert_relative_eq!(tail(0.5, 3.0, 10.0), expected, max_relative = 1e-10);
    }

    #[test]
    fn log_branch_seam() {
        let l = 3.0;
        let d = 0.5 / l;
        let below = tail(1.0, l, d * (1.0 - 1e-12));
        let above = tail(1.0, l, d);
        assert_relative_eq!(below, above, max_relative = 1e-8);
    }

    #[test]
    fn mirrored_tails() {
        let params = SchemeParams::new(0.7, 1.5, 1, 1).unwrap();
        let grid = Grid::new(0.0, 2.0, 15).unwrap();
        let (l, r) = all_tails(&params, &grid);
        for i in 1..=15 {
            assert_eq!(l[i - 1], tail_integral_left(i, &params, &grid));
            assert_eq!(r[i - 1], tail_integral_right(i, &params, &grid));
            assert_eq!(l[i - 1], r[15 - i]);
        }
    }
}
