//! Scheme parameters and the uniform grid.

use crate::error::{Error, Result};
use crate::special::c_beta;

/// Distance from `beta = 1` inside which the power-law coefficient forms lose
/// accuracy to cancellation.
pub const NEAR_LOG_CASE_WINDOW: f64 = 1e-6;

/// Parameters of the discretization: fractional order, tempering rate and the
/// two scheme selectors.
///
/// `s` shifts the kernel power into the interpolated function away from the
/// singular cell and `s1` does the same inside it. For `beta < 1` the
/// admissible pairs are `(0, 0)` and `(1, 1)`, for `beta >= 1` they are
/// `(0, 1)` and `(1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    pub beta: f64,
    pub lambda: f64,
    pub s: u8,
    pub s1: u8,
    /// Multiply the assembled operator (and everything entering it) by the
    /// normalization constant `c_beta`.
    pub apply_cbeta: bool,
}

impl SchemeParams {
    pub fn new(beta: f64, lambda: f64, s: u8, s1: u8) -> Result<Self> {
        if !(beta > 0.0 && beta < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in (0, 2), got {beta}"
            )));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        let admissible = if beta < 1.0 {
            matches!((s, s1), (0, 0) | (1, 1))
        } else {
            matches!((s, s1), (0, 1) | (1, 1))
        };
        if !admissible {
            return Err(Error::InvalidParameter(format!(
                "scheme (s, s1) = ({s}, {s1}) is not admissible for beta = {beta}"
            )));
        }
        if beta != 1.0 && (beta - 1.0).abs() < NEAR_LOG_CASE_WINDOW {
            log::warn!(
                "beta = {beta} is within {NEAR_LOG_CASE_WINDOW:e} of 1; \
                 coefficient formulas suffer cancellation (use beta = 1 exactly for the log forms)"
            );
        }
        Ok(Self {
            beta,
            lambda,
            s,
            s1,
            apply_cbeta: true,
        })
    }

    /// The `O(h^2)`-type scheme `(s, s1) = (1, 1)`, admissible for every `beta`.
    pub fn high_order(beta: f64, lambda: f64) -> Result<Self> {
        Self::new(beta, lambda, 1, 1)
    }

    /// The low-regularity scheme: `(0, 0)` for `beta < 1`, `(0, 1)` otherwise.
    pub fn low_order(beta: f64, lambda: f64) -> Result<Self> {
        if beta < 1.0 {
            Self::new(beta, lambda, 0, 0)
        } else {
            Self::new(beta, lambda, 0, 1)
        }
    }

    pub fn with_cbeta(mut self, apply: bool) -> Self {
        self.apply_cbeta = apply;
        self
    }

    /// `beta == 1` selects the logarithmic coefficient forms.
    pub fn is_log_case(&self) -> bool {
        self.beta == 1.0
    }

    /// Factor applied to the assembled operator: `c_beta` or `1`.
    pub fn operator_scale(&self) -> f64 {
        if self.apply_cbeta {
            c_beta(self)
        } else {
            1.0
        }
    }

    /// Theoretical convergence order of the scheme for smooth solutions.
    /// For `beta = 1, s = s1 = 1` this is 2 up to a logarithmic factor.
    pub fn expected_order(&self) -> f64 {
        let b = self.beta;
        match (b < 1.0, b == 1.0, self.s) {
            (true, _, 0) => 2.0 - b,
            (true, _, _) => 2.0,
            (false, true, 0) => 1.0,
            (false, true, _) => 2.0,
            (false, false, 0) => 2.0 - b,
            (false, false, _) => 3.0 - b,
        }
    }

    /// Whether convergence rates should be reported with the `ln h`
    /// correction.
    pub fn log_corrected_rates(&self) -> bool {
        self.is_log_case() && self.s == 1 && self.s1 == 1
    }
}

/// Uniform partition `a = x_0 < x_1 < ... < x_{M+1} = b` with `M` interior
/// nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub m: usize,
    pub h: f64,
}

impl Grid {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(Error::InvalidParameter(format!(
                "interval ({a}, {b}) must be finite with b > a"
            )));
        }
        if m < 3 {
            return Err(Error::InvalidParameter(format!(
                "at least 3 interior nodes are required, got {m}"
            )));
        }
        Ok(Self {
            a,
            b,
            m,
            h: (b - a) / (m as f64 + 1.0),
        })
    }

    /// Node `x_i` for `i = 0..=M+1`; the endpoints are returned exactly.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i <= self.m + 1);
        if i == 0 {
            self.a
        } else if i == self.m + 1 {
            self.b
        } else {
            self.a + i as f64 * self.h
        }
    }

    /// Interior nodes `x_1, ..., x_M`.
    pub fn interior_nodes(&self) -> Vec<f64> {
        (1..=self.m).map(|i| self.node(i)).collect()
    }

    /// `x_i - a`, computed as `i h` so that mirrored rows see identical values.
    pub fn dist_left(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    /// `b - x_i`, computed as `(M + 1 - i) h`.
    pub fn dist_right(&self, i: usize) -> f64 {
        (self.m + 1 - i) as f64 * self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_pairs() {
        assert!(SchemeParams::new(0.5, 0.0, 0, 0).is_ok());
        assert!(SchemeParams::new(0.5, 0.0, 1, 1).is_ok());
        assert!(SchemeParams::new(0.5, 0.0, 0, 1).is_err());
        assert!(SchemeParams::new(1.0, 0.0, 0, 0).is_err());
        assert!(SchemeParams::new(1.0, 0.0, 0, 1).is_ok());
        assert!(SchemeParams::new(1.5, 2.0, 1, 1).is_ok());
        assert!(SchemeParams::new(1.5, 2.0, 1, 0).is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SchemeParams::new(0.0, 0.0, 0, 0).is_err());
        assert!(SchemeParams::new(2.0, 0.0, 1, 1).is_err());
        assert!(SchemeParams::new(0.5, -1.0, 0, 0).is_err());
        assert!(SchemeParams::new(f64::NAN, 0.0, 0, 0).is_err());
    }

    #[test]
    fn grid_endpoints_exact() {
        let g = Grid::new(-0.3, 0.7, 9).unwrap();
        assert_eq!(g.node(0), -0.3);
        assert_eq!(g.node(10), 0.7);
        assert!((g.h - 0.1).abs() < 1e-15);
        assert!(Grid::new(0.0, 1.0, 2).is_err());
        assert!(Grid::new(1.0, 0.0, 5).is_err());
    }

    #[test]
    fn mirrored_distances_are_bitwise_equal() {
        let g = Grid::new(0.0, 1.0, 31).unwrap();
        for i in 1..=31 {
            assert_eq!(g.dist_left(i), g.dist_right(32 - i));
        }
    }
}
