//! The three model problems: a manufactured smooth solution with zero
//! exterior data, a manufactured solution with nonzero exterior data, and
//! the mean exit time from a symmetric interval.

use std::f64::consts::PI;

use crate::boundary::BoundarySpec;
use crate::error::{Error, Result};
use crate::params::{Grid, SchemeParams};
use crate::quadrature::{gauss_legendre, jacobi_gauss_rule};
use crate::reference::ReferenceOperator;
use crate::special::{exp_integral_e1, gamma_fn};
use crate::tails::{TailIntegrator, TAIL_QUADRATURE_POINTS};

/// A boundary value problem `-(Delta + lambda)^{beta/2} u = f` on `(a, b)`.
pub trait Problem {
    fn domain(&self) -> (f64, f64);

    /// Number of interior nodes at refinement level `j`.
    fn nodes_at_level(&self, j: u32) -> usize;

    fn boundary(&self) -> BoundarySpec;

    /// `f(x_i)` at the interior nodes.
    fn rhs(&self, params: &SchemeParams, grid: &Grid) -> Result<Vec<f64>>;

    /// Exact `u(x_i)`, or `None` when no closed form is available and errors
    /// must come from successive refinement.
    fn exact(&self, params: &SchemeParams, grid: &Grid) -> Option<Vec<f64>>;
}

/// `u = x^2 (1 - x)` on `(0, 1)`, `u = 0` outside.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example1;

/// `u = (x - x^2)^2` on `(0, 1)`, `u = -2x` on `[-1/2, 0]`, `u = 2x - 2` on
/// `[1, 3/2]`, zero elsewhere.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example2;

/// `f = 1` on `(-r, r)`, `u = 0` outside: the mean exit time of a tempered
/// stable process.
#[derive(Debug, Clone, Copy)]
pub struct Example3 {
    pub radius: f64,
}

impl Default for Example3 {
    fn default() -> Self {
        Self { radius: 1.0 }
    }
}

/// `f(x_i)` for [`Example1`], built from the tail masses and two finite
/// integrals. The `beta = 1` formula replaces the `1/(1 - beta)` terms by
/// exponential integrals, or by `ln(x/(1-x))` when `lambda = 0`.
pub fn example1_f(params: &SchemeParams, grid: &Grid) -> Vec<f64> {
    let (b, l) = (params.beta, params.lambda);
    let tails = TailIntegrator::new(params);
    let scale = params.operator_scale();
    let u = |x: f64| x * x * (1.0 - x);
    let interior = grid.interior_nodes();
    if params.is_log_case() {
        let rule = gauss_legendre(TAIL_QUADRATURE_POINTS);
        interior
            .iter()
            .map(|&x| {
                let slope = 2.0 * x - 3.0 * x * x;
                let log_term = if l == 0.0 {
                    (x / (1.0 - x)).ln()
                } else {
                    exp_integral_e1(l * (1.0 - x)).expect("positive") - exp_integral_e1(l * x).expect("positive")
                };
                let left = rule.integrate_on(0.0, x, |t| (-t + 3.0 * x - 1.0) * (-l * t).exp());
                let right = rule.integrate_on(0.0, 1.0 - x, |t| (t + 3.0 * x - 1.0) * (-l * t).exp());
                scale * (u(x) * (tails.eval(x) + tails.eval(1.0 - x)) + left + right + slope * log_term)
            })
            .collect()
    } else {
        let rule = jacobi_gauss_rule(TAIL_QUADRATURE_POINTS, 0.0, 1.0 - b);
        interior
            .iter()
            .map(|&x| {
                let slope = (2.0 * x - 3.0 * x * x) / (1.0 - b);
                let c = l * slope;
                let edge = slope * (x.powf(1.0 - b) * (-l * x).exp() - (1.0 - x).powf(1.0 - b) * (-l * (1.0 - x)).exp());
                let left = rule.integrate_power_weighted(x, |t| (-t + 3.0 * x - 1.0 + c) * (-l * t).exp());
                let right = rule.integrate_power_weighted(1.0 - x, |t| (t + 3.0 * x - 1.0 - c) * (-l * t).exp());
                scale * (u(x) * (tails.eval(x) + tails.eval(1.0 - x)) + edge + left + right)
            })
            .collect()
    }
}

impl Problem for Example1 {
    fn domain(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn nodes_at_level(&self, j: u32) -> usize {
        (1usize << j) - 1
    }

    fn boundary(&self) -> BoundarySpec {
        BoundarySpec::zero(0.0, 1.0)
    }

    fn rhs(&self, params: &SchemeParams, grid: &Grid) -> Result<Vec<f64>> {
        Ok(example1_f(params, grid))
    }

    fn exact(&self, _: &SchemeParams, grid: &Grid) -> Option<Vec<f64>> {
        Some(grid.interior_nodes().iter().map(|&x| x * x * (1.0 - x)).collect())
    }
}

fn example2_g(y: f64) -> f64 {
    if (-0.5..=0.0).contains(&y) {
        -2.0 * y
    } else if (1.0..=1.5).contains(&y) {
        2.0 * y - 2.0
    } else {
        0.0
    }
}

/// Manufactured data for [`Example2`]: `f` at the nodes (by direct
/// quadrature of the operator), the exterior condition and the exact
/// interior values.
pub fn example2_setup(params: &SchemeParams, grid: &Grid) -> Result<(Vec<f64>, BoundarySpec, Vec<f64>)> {
    let boundary = Example2.boundary();
    let reference = ReferenceOperator::new(params, &boundary);
    let u = |x: f64| (x - x * x).powi(2);
    let nodes = grid.interior_nodes();
    let f = nodes.iter().map(|&x| reference.apply(u, x)).collect::<Result<Vec<_>>>()?;
    let exact = nodes.iter().map(|&x| u(x)).collect();
    Ok((f, boundary, exact))
}

impl Problem for Example2 {
    fn domain(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn nodes_at_level(&self, j: u32) -> usize {
        1usize << j
    }

    fn boundary(&self) -> BoundarySpec {
        BoundarySpec::compact(0.0, 1.0, example2_g, vec![(-0.5, 0.0), (1.0, 1.5)], 0.0, 0.0)
            .expect("example data is valid")
    }

    fn rhs(&self, params: &SchemeParams, grid: &Grid) -> Result<Vec<f64>> {
        Ok(example2_setup(params, grid)?.0)
    }

    fn exact(&self, _: &SchemeParams, grid: &Grid) -> Option<Vec<f64>> {
        Some(grid.interior_nodes().iter().map(|&x| (x - x * x).powi(2)).collect())
    }
}

/// Exact mean exit time from `(-r, r)` without tempering:
/// `sqrt(pi) (r^2 - x^2)^{beta/2} / (2^beta Gamma(1 + beta/2) Gamma(1/2 + beta/2))`.
/// Refuses `lambda > 0`, which has no closed form.
pub fn example3_exact(params: &SchemeParams, radius: f64, x: f64) -> Result<f64> {
    if params.lambda != 0.0 {
        return Err(Error::InvalidParameter(
            "the exit-time closed form needs lambda = 0; use successive refinement".into(),
        ));
    }
    if x.abs() > radius {
        return Err(Error::Domain(format!("|x| = {} exceeds the radius {radius}", x.abs())));
    }
    let b = params.beta;
    let denom = 2f64.powf(b) * gamma_fn(1.0 + b / 2.0)? * gamma_fn(0.5 + b / 2.0)?;
    Ok(PI.sqrt() * (radius * radius - x * x).powf(b / 2.0) / denom)
}

impl Problem for Example3 {
    fn domain(&self) -> (f64, f64) {
        (-self.radius, self.radius)
    }

    fn nodes_at_level(&self, j: u32) -> usize {
        (1usize << j) - 1
    }

    fn boundary(&self) -> BoundarySpec {
        BoundarySpec::zero(-self.radius, self.radius)
    }

    fn rhs(&self, _: &SchemeParams, grid: &Grid) -> Result<Vec<f64>> {
        Ok(vec![1.0; grid.m])
    }

    fn exact(&self, params: &SchemeParams, grid: &Grid) -> Option<Vec<f64>> {
        if params.lambda != 0.0 {
            return None;
        }
        grid.interior_nodes()
            .iter()
            .map(|&x| example3_exact(params, self.radius, x).ok())
            .collect()
    }
}
