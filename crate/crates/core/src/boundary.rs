//! Exterior data `u = g` on `R \ (a, b)` and its kernel-weighted integrals
//! `d1(x) = int_{-inf}^a g(y) k(x - y) dy`, `d2(x) = int_b^inf g(y) k(y - x) dy`
//! with `k(t) = e^{-lambda t} t^{-1-beta}`.
//!
//! `g` is described as a far-field constant on each side plus finitely many
//! bounded pieces on which it may differ from that constant. Unbounded
//! non-constant data is not representable.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::quadrature::{gauss_legendre, integrate_graded, QuadratureRule};
use crate::tails::TailIntegrator;

/// Points per panel of the composite Gauss–Legendre rule for the pieces.
pub const LOAD_PANEL_POINTS: usize = 32;

/// Geometric growth of the load panels away from the evaluation point.
const LOAD_PANEL_RATIO: f64 = 2.0;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Exterior condition of the nonlocal problem plus the endpoint values
/// `u(a)`, `u(b)` consumed by the boundary lift.
#[derive(Clone)]
pub struct BoundarySpec {
    a: f64,
    b: f64,
    g: ScalarFn,
    pieces: Vec<(f64, f64)>,
    far_left: f64,
    far_right: f64,
    pub u_a: f64,
    pub u_b: f64,
}

impl fmt::Debug for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundarySpec")
            .field("domain", &(self.a, self.b))
            .field("pieces", &self.pieces)
            .field("far_field", &(self.far_left, self.far_right))
            .field("u_a", &self.u_a)
            .field("u_b", &self.u_b)
            .finish()
    }
}

impl BoundarySpec {
    /// Homogeneous data: `g = 0` and `u(a) = u(b) = 0`.
    pub fn zero(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            g: Arc::new(|_| 0.0),
            pieces: Vec::new(),
            far_left: 0.0,
            far_right: 0.0,
            u_a: 0.0,
            u_b: 0.0,
        }
    }

    /// `g = c` on the whole exterior, `u(a) = u(b) = c`.
    pub fn constant(a: f64, b: f64, c: f64) -> Self {
        Self {
            g: Arc::new(move |_| c),
            far_left: c,
            far_right: c,
            u_a: c,
            u_b: c,
            ..Self::zero(a, b)
        }
    }

    /// `g` vanishing outside the given bounded pieces.
    pub fn compact<G>(a: f64, b: f64, g: G, pieces: Vec<(f64, f64)>, u_a: f64, u_b: f64) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(a, b, g, pieces, (0.0, 0.0), u_a, u_b)
    }

    /// General data: `g` equals `far_field.0` left of `a` and `far_field.1`
    /// right of `b` except on `pieces`. `g` must be smooth on each piece;
    /// split pieces at any kink or jump.
    ///
    /// Rejects pieces that overlap `(a, b)` or are unbounded, and data that
    /// disagrees with the far-field constant at sample points off the pieces.
    pub fn new<G>(
        a: f64,
        b: f64,
        g: G,
        mut pieces: Vec<(f64, f64)>,
        far_field: (f64, f64),
        u_a: f64,
        u_b: f64,
    ) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(Error::InvalidParameter(format!("bad domain ({a}, {b})")));
        }
        for &(lo, hi) in &pieces {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "exterior piece [{lo}, {hi}] must be bounded and non-empty"
                )));
            }
            if hi > a && lo < b {
                return Err(Error::InvalidParameter(format!(
                    "exterior piece [{lo}, {hi}] overlaps the domain ({a}, {b})"
                )));
            }
        }
        pieces.sort_by(|p, q| p.0.total_cmp(&q.0));
        if pieces.windows(2).any(|w| w[1].0 < w[0].1) {
            return Err(Error::InvalidParameter("exterior pieces overlap".into()));
        }
        let spec = Self {
            a,
            b,
            g: Arc::new(g),
            pieces,
            far_left: far_field.0,
            far_right: far_field.1,
            u_a,
            u_b,
        };
        spec.spot_check()?;
        Ok(spec)
    }

    fn spot_check(&self) -> Result<()> {
        let width = self.b - self.a;
        let reach = self
            .pieces
            .iter()
            .map(|&(lo, hi)| (self.a - lo).max(hi - self.b))
            .fold(4.0 * width, f64::max);
        let samples = 257;
        for k in 0..samples {
            let t = reach * (k as f64 / (samples - 1) as f64).powi(2);
            for (y, far) in [(self.a - t, self.far_left), (self.b + t, self.far_right)] {
                if self.on_piece(y) {
                    continue;
                }
                let v = (self.g)(y);
                if v != far {
                    return Err(Error::InvalidParameter(format!(
                        "exterior data g({y}) = {v} off the declared pieces, expected {far}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn on_piece(&self, y: f64) -> bool {
        self.pieces.iter().any(|&(lo, hi)| lo <= y && y <= hi)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Exterior value `g(y)`.
    pub fn g(&self, y: f64) -> f64 {
        (self.g)(y)
    }

    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    pub fn far_field(&self) -> (f64, f64) {
        (self.far_left, self.far_right)
    }

    /// `g = 0` everywhere, so every exterior load vanishes.
    pub fn is_homogeneous(&self) -> bool {
        self.pieces.is_empty() && self.far_left == 0.0 && self.far_right == 0.0
    }
}

/// Evaluates the unnormalized exterior loads `(d1(x), d2(x))` for a fixed
/// parameter set.
#[derive(Debug, Clone)]
pub struct ExteriorLoads {
    beta: f64,
    lambda: f64,
    tails: TailIntegrator,
    rule: QuadratureRule,
}

impl ExteriorLoads {
    pub fn new(params: &SchemeParams) -> Self {
        Self {
            beta: params.beta,
            lambda: params.lambda,
            tails: TailIntegrator::new(params),
            rule: gauss_legendre(LOAD_PANEL_POINTS),
        }
    }

    fn kernel(&self, t: f64) -> f64 {
        (-self.lambda * t).exp() * t.powf(-1.0 - self.beta)
    }

    /// `(d1(x), d2(x))` for `a < x < b`, without `c_beta`.
    pub fn at(&self, boundary: &BoundarySpec, x: f64) -> (f64, f64) {
        if boundary.is_homogeneous() {
            return (0.0, 0.0);
        }
        let (a, b) = boundary.domain();
        debug_assert!(a < x && x < b);
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        if boundary.far_left != 0.0 {
            d1 += boundary.far_left * self.tails.eval(x - a);
        }
        if boundary.far_right != 0.0 {
            d2 += boundary.far_right * self.tails.eval(b - x);
        }
        for &(lo, hi) in boundary.pieces() {
            if hi <= a {
                let far = boundary.far_left;
                d1 += integrate_graded(&self.rule, x - hi, x - lo, LOAD_PANEL_RATIO, |t| {
                    (boundary.g(x - t) - far) * self.kernel(t)
                });
            } else {
                let far = boundary.far_right;
                d2 += integrate_graded(&self.rule, lo - x, hi - x, LOAD_PANEL_RATIO, |t| {
                    (boundary.g(x + t) - far) * self.kernel(t)
                });
            }
        }
        (d1, d2)
    }
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
            vec![(1.0, 1.5), (-0.5, 0.0)],
            0.0,
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn zero_data_short_circuits() {
        let params = SchemeParams::new(0.5, 1.0, 0, 0).unwrap();
        assert_eq!(ExteriorLoads::new(&params).at(&BoundarySpec::zero(0.0, 1.0), 0.3), (0.0, 0.0));
    }

    #[test]
    fn left_load_closed_form() {
        // int_{-1/2}^0 (-2y)(1/2 - y)^{-3/2} dy
        let params = SchemeParams::new(0.5, 0.0, 0, 0).unwrap();
        let (d1, _) = ExteriorLoads::new(&params).at(&example2_data(), 0.5);
        assert_relative_eq!(d1, 0.343_145_750_507_619_8, max_relative = 1e-13);
        assert!(d1 > 0.0);
    }

    #[test]
    fn right_support_leaves_left_load_empty() {
        let params = SchemeParams::new(1.2, 2.0, 1, 1).unwrap();
        let spec = BoundarySpec::compact(0.0, 1.0, |y| if (1.0..=2.0).contains(&y) { 1.0 } else { 0.0 }, vec![(1.0, 2.0)], 0.0, 1.0)
            .unwrap();
        let (d1, d2) = ExteriorLoads::new(&params).at(&spec, 0.25);
        assert_eq!(d1, 0.0);
        assert!(d2 > 0.0);
    }

    #[test]
    fn constant_data_equals_tail_masses() {
        let params = SchemeParams::new(0.7, 1.5, 1, 1).unwrap();
        let spec = BoundarySpec::constant(0.0, 1.0, 2.0);
        let (d1, d2) = ExteriorLoads::new(&params).at(&spec, 0.25);
        let tails = TailIntegrator::new(&params);
        assert_relative_eq!(d1, 2.0 * tails.eval(0.25), max_relative = 1e-15);
        assert_relative_eq!(d2, 2.0 * tails.eval(0.75), max_relative = 1e-15);
    }

    #[test]
    fn piece_quadrature_is_converged_near_the_boundary() {
        // distance h = 2^-12 from the support: compare with a finer rule
        let params = SchemeParams::new(1.5, 3.0, 1, 1).unwrap();
        let spec = example2_data();
        let x = 2f64.powi(-12);
        let (d1, d2) = ExteriorLoads::new(&params).at(&spec, x);
        let kernel = |t: f64| (-3.0 * t).exp() * t.powf(-2.5);
        let fine = gauss_legendre(48);
        let d1_fine = integrate_graded(&fine, x, x + 0.5, 1.5, |t| -2.0 * (x - t) * kernel(t));
        let d2_fine = integrate_graded(&fine, 1.0 - x, 1.5 - x, 1.5, |t| (2.0 * (x + t) - 2.0) * kernel(t));
        assert_relative_eq!(d1, d1_fine, max_relative = 1e-12);
        assert_relative_eq!(d2, d2_fine, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_pieces() {
        assert!(BoundarySpec::compact(0.0, 1.0, |_| 0.0, vec![(-0.5, 0.1)], 0.0, 0.0).is_err());
        assert!(BoundarySpec::compact(0.0, 1.0, |_| 0.0, vec![(f64::NEG_INFINITY, 0.0)], 0.0, 0.0).is_err());
        assert!(BoundarySpec::compact(0.0, 1.0, |_| 0.0, vec![(-1.0, -0.2), (-0.5, 0.0)], 0.0, 0.0).is_err());
    }

    #[test]
    fn rejects_data_off_the_pieces() {
        // g = 1 everywhere but declared compact on [-1, 0]
        assert!(BoundarySpec::compact(0.0, 1.0, |_| 1.0, vec![(-1.0, 0.0)], 1.0, 1.0).is_err());
    }
}
