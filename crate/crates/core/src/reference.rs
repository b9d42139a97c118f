//! Direct evaluation of `-(Delta + lambda)^{beta/2} u(x)` by quadrature of the
//! hypersingular integral, independent of the discretization.
//!
//! With `delta = min(x - a, b - x)` the integral splits into
//!
//! * the symmetric near field `int_0^delta (2u(x) - u(x-t) - u(x+t)) k(t) dt`,
//!   whose integrand is `O(t^{1-beta})` and is integrated by Gauss–Jacobi with
//!   weight `t^{1-beta}`. Below `t = tau` the difference quotient
//!   `(2u(x) - u(x-t) - u(x+t)) / t^2` is replaced by the even quadratic
//!   through its values at `tau` and `2 tau`, since evaluating it directly
//!   at the smallest nodes cancels to roundoff;
//! * `2 u(x) B(delta)` minus the one-sided integrals of `u` against `k` over
//!   the rest of `(a, b)` (graded Gauss–Legendre panels) and over the
//!   exterior (the loads `d1(x) + d2(x)`).

use crate::boundary::{BoundarySpec, ExteriorLoads, LOAD_PANEL_POINTS};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::quadrature::{gauss_legendre, integrate_graded, jacobi_gauss_rule, QuadratureRule};
use crate::tails::{TailIntegrator, TAIL_QUADRATURE_POINTS};

/// `tau / delta` for the near-field cutoff.
const NEAR_FIELD_CUTOFF: f64 = 1.0 / 128.0;

/// Evaluator of the continuous operator for one parameter set and one
/// exterior condition. Construction builds the quadrature rules once.
#[derive(Debug, Clone)]
pub struct ReferenceOperator {
    params: SchemeParams,
    boundary: BoundarySpec,
    scale: f64,
    tails: TailIntegrator,
    loads: ExteriorLoads,
    near: QuadratureRule,
    far: QuadratureRule,
}

impl ReferenceOperator {
    pub fn new(params: &SchemeParams, boundary: &BoundarySpec) -> Self {
        Self {
            params: *params,
            boundary: boundary.clone(),
            scale: params.operator_scale(),
            tails: TailIntegrator::new(params),
            loads: ExteriorLoads::new(params),
            near: jacobi_gauss_rule(TAIL_QUADRATURE_POINTS, 0.0, 1.0 - params.beta),
            far: gauss_legendre(LOAD_PANEL_POINTS),
        }
    }

    /// `-(Delta + lambda)^{beta/2} u(x)`, including `c_beta` when the
    /// parameters ask for it. `u` gives the solution on `[a, b]`; the
    /// exterior values come from the boundary data.
    pub fn apply<U: Fn(f64) -> f64>(&self, u: U, x: f64) -> Result<f64> {
        let (a, b) = self.boundary.domain();
        if !(a < x && x < b) {
            return Err(Error::Domain(format!("x = {x} is not inside ({a}, {b})")));
        }
        let lambda = self.params.lambda;
        let beta = self.params.beta;
        let ux = u(x);
        let delta = (x - a).min(b - x);

        let quotient = |t: f64| (2.0 * ux - u(x - t) - u(x + t)) / (t * t);
        let tau = NEAR_FIELD_CUTOFF * delta;
        let (q1, q2) = (quotient(tau), quotient(2.0 * tau));
        let curvature = (q2 - q1) / (3.0 * tau * tau);
        let near = self.near.integrate_power_weighted(delta, |t| {
            let q = if t < tau {
                q1 + curvature * (t * t - tau * tau)
            } else {
                quotient(t)
            };
            (-lambda * t).exp() * q
        });

        let kernel = |t: f64| (-lambda * t).exp() * t.powf(-1.0 - beta);
        let inner_left = integrate_graded(&self.far, delta, x - a, 2.0, |t| u(x - t) * kernel(t));
        let inner_right = integrate_graded(&self.far, delta, b - x, 2.0, |t| u(x + t) * kernel(t));
        let (d1, d2) = self.loads.at(&self.boundary, x);
        let far = 2.0 * ux * self.tails.eval(delta) - inner_left - inner_right - d1 - d2;

        Ok(self.scale * (near + far))
    }
}

/// One-shot form of [`ReferenceOperator::apply`].
pub fn reference_apply_operator<U: Fn(f64) -> f64>(
    u: U,
    boundary: &BoundarySpec,
    x: f64,
    params: &SchemeParams,
) -> Result<f64> {
    ReferenceOperator::new(params, boundary).apply(u, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn example2_data() -> BoundarySpec {
        BoundarySpec::compact(
            0.0,
            1.0,
            |y| {
                if (-0.5..=0.0).contains(&y) {
                    -2.0 * y
                } else if (1.0..=1.5).contains(&y) {
                    2.0 * y - 2.0
                } else {
                    0.0
                }
            },
            vec![(-0.5, 0.0), (1.0, 1.5)],
            0.0,
            0.0,
        )
        .unwrap()
    }

    fn raw(beta: f64, lambda: f64) -> SchemeParams {
        SchemeParams::high_order(beta, lambda).unwrap().with_cbeta(false)
    }

    #[test]
    fn constants_are_annihilated() {
        for &(b, l) in &[(0.3, 0.0), (0.5, 3.0), (1.0, 0.5), (1.0, 3.0), (1.7, 2.0)] {
            let op = ReferenceOperator::new(&raw(b, l), &BoundarySpec::constant(-1.0, 2.0, 3.0));
            for &x in &[-0.99, -0.2, 0.5, 1.9] {
                let scale = 3.0 * TailIntegrator::new(&raw(b, l)).eval(1e-2);
                assert!(op.apply(|_| 3.0, x).unwrap().abs() < 1e-13 * scale);
            }
        }
    }

    #[test]
    fn cubic_with_zero_exterior_matches_high_precision_values() {
        // u = x^2 (1 - x) on (0, 1), zero outside; 30-digit adaptive quadrature
        let zero = BoundarySpec::zero(0.0, 1.0);
        let u = |x: f64| x * x * (1.0 - x);
        let cases = [
            (0.5, 3.0, 0.5, 0.133_727_677_999_767_19),
            (1.5, 0.5, 0.1, -1.620_300_456_433_836_7),
            (1.0, 3.0, 0.3, -0.038_006_662_789_091_37),
        ];
        for &(b, l, x, expected) in &cases {
            let got = reference_apply_operator(u, &zero, x, &raw(b, l)).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-11);
        }
    }

    #[test]
    fn quartic_with_exterior_pieces_matches_high_precision_values() {
        let spec = example2_data();
        let u = |x: f64| (x - x * x).powi(2);
        let cases = [
            (0.5, 0.0, 0.5, -0.147_543_477_254_060_55),
            (1.5, 3.0, 0.05, -4.826_485_394_569_875_4),
            (1.0, 0.5, 0.9, -1.990_526_020_894_740_5),
        ];
        for &(b, l, x, expected) in &cases {
            let got = reference_apply_operator(u, &spec, x, &raw(b, l)).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-11);
        }
    }

    #[test]
    fn non_polynomial_solution() {
        let zero = BoundarySpec::zero(0.0, 1.0);
        let u = |x: f64| (3.0 * x).sin();
        for &(b, l, x, expected) in &[(1.5, 1.0, 0.2, 5.428_158_444_454_666_2), (0.3, 0.0, 0.6, 9.415_457_289_251_594_8)] {
            let got = reference_apply_operator(u, &zero, x, &raw(b, l)).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-11);
        }
    }

    #[test]
    fn normalization_is_a_pure_factor() {
        let params = SchemeParams::high_order(0.5, 3.0).unwrap();
        let u = |x: f64| x * x * (1.0 - x);
        let zero = BoundarySpec::zero(0.0, 1.0);
        let scaled = reference_apply_operator(u, &zero, 0.5, &params).unwrap();
        let unscaled = reference_apply_operator(u, &zero, 0.5, &params.with_cbeta(false)).unwrap();
        assert_relative_eq!(scaled, crate::special::c_beta(&params) * unscaled, max_relative = 1e-15);
    }

    #[test]
    fn rejects_points_outside() {
        let zero = BoundarySpec::zero(0.0, 1.0);
        assert!(reference_apply_operator(|_| 0.0, &zero, 0.0, &raw(0.5, 0.0)).is_err());
        assert!(reference_apply_operator(|_| 0.0, &zero, 1.2, &raw(0.5, 0.0)).is_err());
    }
}
