//! Special functions: Gamma, the normalization constant `c_beta` and the
//! exponential integral `E1`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::quadrature::{gauss_legendre, QuadratureRule};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Number of terms kept in the power series of `E1`.
pub const E1_SERIES_TERMS: usize = 26;

/// Arguments below this use the power series of `E1`; larger arguments use
/// the reciprocal substitution.
pub const E1_SERIES_CUTOFF: f64 = 0.5;

/// Truncation parameter `K` of the reciprocal substitution
/// `t -> 1/t` used for the `beta = 1` tails.
pub const RECIPROCAL_CUTOFF_K: f64 = 80.0;

/// `Gamma(x)` for real `x` away from the poles `0, -1, -2, ...`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Domain(format!("gamma has a pole at {x}")));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// Normalization constant of the tempered fractional Laplacian.
///
/// For `lambda = 0` or `beta = 1` this is
/// `beta Gamma((1+beta)/2) / (2^(1-beta) sqrt(pi) Gamma(1-beta/2))`,
/// otherwise `Gamma(1/2) / (2 sqrt(pi) |Gamma(-beta)|)`.
pub fn c_beta(params: &SchemeParams) -> f64 {
    let b = params.beta;
    // beta in (0,2) keeps every argument below away from the poles
    let g = |x: f64| statrs::function::gamma::gamma(x);
    if params.lambda == 0.0 || b == 1.0 {
        b * g((1.0 + b) / 2.0) / (2f64.powf(1.0 - b) * PI.sqrt() * g(1.0 - b / 2.0))
    } else {
        g(0.5) / (2.0 * PI.sqrt() * g(-b).abs())
    }
}

/// `int_z^inf e^{-t}/t dt` from the truncated power series
/// `-gamma - ln z - sum_{n=1}^{26} (-1)^n z^n / (n n!)`.
///
/// Accurate for small `z`; the series is meant for `z < 1/2`.
pub fn exp_integral_tail_series(z: f64) -> Result<f64> {
    exp_integral_tail_series_terms(z, E1_SERIES_TERMS)
}

/// Same as [`exp_integral_tail_series`] with an explicit term count.
pub fn exp_integral_tail_series_terms(z: f64, terms: usize) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!(
            "exponential integral needs z > 0, got {z}"
        )));
    }
    // term_n = (-1)^n z^n / n!, accumulated by recurrence
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..=terms {
        term *= -z / n as f64;
        sum += term / n as f64;
    }
    Ok(-EULER_GAMMA - z.ln() - sum)
}

/// `E1(z)` for any `z > 0`: power series below [`E1_SERIES_CUTOFF`], otherwise
/// the substitution `t = 1/tau`, giving `int_{1/K}^{1/z} e^{-1/tau}/tau dtau`
/// evaluated with Gauss–Legendre.
pub fn exp_integral_e1(z: f64) -> Result<f64> {
    if z < E1_SERIES_CUTOFF {
        return exp_integral_tail_series(z);
    }
    static LEGENDRE: OnceLock<QuadratureRule> = OnceLock::new();
    let rule = LEGENDRE.get_or_init(|| gauss_legendre(crate::tails::TAIL_QUADRATURE_POINTS));
    Ok(exp_integral_e1_reciprocal(z, rule))
}

pub(crate) fn exp_integral_e1_reciprocal(z: f64, legendre: &QuadratureRule) -> f64 {
    let upper = 1.0 / z;
    let lower = reciprocal_lower_limit(1.0, z);
    legendre.integrate_on(lower, upper, |tau| (-1.0 / tau).exp() / tau)
}

/// Lower limit of the reciprocal-substitution integral `int e^{-rate/tau}`
/// for a tail starting at `distance`: `rate / K`, pushed below `1/distance`
/// when `rate * distance` approaches `K`.
pub(crate) fn reciprocal_lower_limit(rate: f64, distance: f64) -> f64 {
    let x = rate * distance;
    if x < 0.5 * RECIPROCAL_CUTOFF_K {
        rate / RECIPROCAL_CUTOFF_K
    } else {
        rate / (x + RECIPROCAL_CUTOFF_K)
    }
}

/// Upper incomplete gamma `Gamma(a, x) = int_x^inf t^(a-1) e^-t dt` by the
/// Legendre continued fraction (modified Lentz). Valid for any real `a` and
/// `x > 0`; convergence is fast once `x > a + 1`.
pub fn upper_incomplete_gamma_cf(a: f64, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (a * x.ln() - x).exp() * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma_fn(0.5).unwrap(), PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma_fn(1.0).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(gamma_fn(5.0).unwrap(), 24.0, max_relative = 1e-13);
        assert_relative_eq!(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma_fn(-1.5).unwrap(), 4.0 / 3.0 * PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn gamma_poles_rejected() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-3.0).is_err());
        assert!(gamma_fn(f64::INFINITY).is_err());
    }

    #[test]
    fn c_beta_branches() {
        let p = SchemeParams::new(1.0, 0.0, 1, 1).unwrap();
        assert_relative_eq!(c_beta(&p), 1.0 / PI, max_relative = 1e-13);
        // beta = 1 keeps the first branch for lambda > 0
        let p = SchemeParams::new(1.0, 3.0, 1, 1).unwrap();
        assert_relative_eq!(c_beta(&p), 1.0 / PI, max_relative = 1e-13);
        // reference values from 30-digit evaluation
        let p = SchemeParams::new(0.5, 3.0, 0, 0).unwrap();
        assert_relative_eq!(c_beta(&p), 0.141_047_395_886_939_07, max_relative = 1e-12);
        let p = SchemeParams::new(0.5, 0.0, 0, 0).unwrap();
        assert_relative_eq!(c_beta(&p), 0.199_471_140_200_716_34, max_relative = 1e-12);
    }

    #[test]
    fn e1_series_values() {
        // 30-digit reference values of E1
        assert_relative_eq!(exp_integral_tail_series(1.0).unwrap(), 0.219_383_934_395_520_27, max_relative = 1e-10);
        assert_relative_eq!(exp_integral_tail_series(0.1).unwrap(), 1.822_923_958_419_390_7, max_relative = 1e-14);
        assert!(exp_integral_tail_series(0.0).is_err());
        assert!(exp_integral_tail_series(-1.0).is_err());
    }

    #[test]
    fn e1_series_truncation_is_converged() {
        let a = exp_integral_tail_series_terms(0.4, 26).unwrap();
        let b = exp_integral_tail_series_terms(0.4, 40).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn incomplete_gamma_cf() {
        // Gamma(0, x) = E1(x)
        assert_relative_eq!(upper_incomplete_gamma_cf(0.0, 1.0), 0.219_383_934_395_520_27, max_relative = 1e-14);
        // Gamma(1, x) = e^-x
        assert_relative_eq!(upper_incomplete_gamma_cf(1.0, 3.0), (-3.0f64).exp(), max_relative = 1e-14);
        // Gamma(-1/2, x) = 2 e^-x / sqrt(x) - 2 sqrt(pi) erfc(sqrt(x)); x = 4
        let expected = 2.0 * (-4.0f64).exp() / 2.0 - 2.0 * PI.sqrt() * 4.677_734_981_047_265_8e-3;
        assert_relative_eq!(upper_incomplete_gamma_cf(-0.5, 4.0), expected, max_relative = 1e-13);
    }

    #[test]
    fn e1_branches_agree() {
        for &z in &[0.5, 0.75, 1.0, 2.5, 7.0] {
            let series = exp_integral_tail_series_terms(z, 60).unwrap();
            let recip = exp_integral_e1(z).unwrap();
            assert_relative_eq!(series, recip, max_relative = 1e-10);
        }
        assert_relative_eq!(exp_integral_e1(1.0).unwrap(), 0.219_383_934_395_520_27, max_relative = 1e-12);
    }
}
