//! Closed-form interpolation weights of the piecewise-linear discretization.
//!
//! Every coefficient is an integral of a linear hat against the kernel power
//! `dist^(s-1-beta)` over one grid cell, normalized by `h^(s+1)`. With
//! `p = 1 - beta + s` and `C = h^-beta / ((beta - s) p)` they reduce to
//! second differences of `m^p`; for `beta = 1` the powers degenerate into
//! logarithms. Large lags use series expansions of the same quantities so
//! that the `O(m^(p-2))` result is not lost to cancellation.

use crate::params::SchemeParams;
use crate::quadrature::adaptive;

/// Above this lag the second differences switch to their series expansion.
const SERIES_LAG: f64 = 8.0;

fn power_prefactor(params: &SchemeParams, h: f64) -> (f64, f64) {
    let b = params.beta;
    let s = params.s as f64;
    let p = 1.0 - b + s;
    (h.powf(-b) / ((b - s) * p), p)
}

/// `2 m^p - (m-1)^p - (m+1)^p`.
fn second_difference(m: f64, p: f64) -> f64 {
    if m < SERIES_LAG {
        return 2.0 * m.powf(p) - (m - 1.0).powf(p) - (m + 1.0).powf(p);
    }
    // -2 m^p sum_{k>=1} binom(p, 2k) m^{-2k}
    let inv2 = 1.0 / (m * m);
    let mut binom = 1.0;
    let mut pow = 1.0;
    let mut sum = 0.0;
    for j in 1..=60 {
        binom *= (p - j as f64 + 1.0) / j as f64;
        if j % 2 == 0 {
            pow *= inv2;
            let term = binom * pow;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
    }
    -2.0 * m.powf(p) * sum
}

/// `i^p - (i-1)^p - p i^(p-1)`.
fn boundary_difference(i: f64, p: f64) -> f64 {
    if i < 2.0 * SERIES_LAG {
        return i.powf(p) - (i - 1.0).powf(p) - p * i.powf(p - 1.0);
    }
    // -i^p sum_{k>=2} binom(p, k) (-1/i)^k
    let x = -1.0 / i;
    let mut binom = p;
    let mut pow = x;
    let mut sum = 0.0;
    for k in 2..=80 {
        binom *= (p - k as f64 + 1.0) / k as f64;
        pow *= x;
        let term = binom * pow;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    -i.powf(p) * sum
}

/// Combined weight `A1(i,s,j+1) + A2(i,s,j)` for lag `m = |i - j| >= 2`.
///
/// The off-diagonal entry is `-weight * e^(-lambda m h) / m^s`.
///
/// # Panics
///
/// If `m < 2`.
pub fn coeff_pair_sum(m: usize, params: &SchemeParams, h: f64) -> f64 {
    assert!(m >= 2, "pair weights are defined for lags >= 2, got {m}");
    let mf = m as f64;
    if params.is_log_case() {
        let inv2 = 1.0 / (mf * mf);
        let v = if params.s == 0 {
            // 2 ln m - ln(m+1) - ln(m-1)
            -(-inv2).ln_1p()
        } else {
            // (m+1) ln(m+1) + (m-1) ln(m-1) - 2 m ln m
            mf * (-inv2).ln_1p() + (2.0 / (mf - 1.0)).ln_1p()
        };
        return v / h;
    }
    let (c, p) = power_prefactor(params, h);
    c * second_difference(mf, p)
}

/// `A2(i,s,i-1)`: weight of the neighbouring node from the adjacent cell.
pub fn adjacent_cell_weight(params: &SchemeParams, h: f64) -> f64 {
    if params.is_log_case() {
        let v = if params.s == 0 {
            1.0 - std::f64::consts::LN_2
        } else {
            2.0 * std::f64::consts::LN_2 - 1.0
        };
        return v / h;
    }
    let (c, p) = power_prefactor(params, h);
    c * (1.0 + p - 2f64.powf(p))
}

/// Weight `h^-beta / (s1 + 1 - beta)` of the linear interpolant on the
/// singular cell `[0, h]`.
pub fn singular_cell_weight(params: &SchemeParams, h: f64) -> f64 {
    h.powf(-params.beta) / (params.s1 as f64 + 1.0 - params.beta)
}

/// Magnitude of the first off-diagonal entry `|h_{i,i+1}|`, including the
/// tempering factor `e^(-lambda h)`.
pub fn coeff_near_diag(params: &SchemeParams, h: f64) -> f64 {
    (-params.lambda * h).exp() * (singular_cell_weight(params, h) + adjacent_cell_weight(params, h))
}

/// `A1(i,s,1)`: weight multiplying `u(a)` in row `i >= 2`, before the factor
/// `e^(-lambda i h) / i^s`.
///
/// # Panics
///
/// If `i < 2`.
pub fn coeff_boundary_left(i: usize, params: &SchemeParams, h: f64) -> f64 {
    assert!(i >= 2, "row {i} couples to u(a) through the singular cell, not A1");
    let fi = i as f64;
    if params.is_log_case() {
        let v = if fi < 2.0 * SERIES_LAG {
            if params.s == 0 {
                (fi / (fi - 1.0)).ln() - 1.0 / fi
            } else {
                (1.0 - fi) * (fi / (fi - 1.0)).ln() + 1.0
            }
        } else {
            // s = 0: sum_{k>=2} 1/(k i^k); s = 1: sum_{k>=1} 1/(k (k+1) i^k)
            let x = 1.0 / fi;
            let mut pow = if params.s == 0 { x } else { 1.0 };
            let mut sum = 0.0;
            for k in (if params.s == 0 { 2 } else { 1 })..=80 {
                pow *= x;
                let kf = k as f64;
                let term = if params.s == 0 { pow / kf } else { pow / (kf * (kf + 1.0)) };
                sum += term;
                if term <= 1e-18 * sum {
                    break;
                }
            }
            sum
        };
        return v / h;
    }
    let (c, p) = power_prefactor(params, h);
    c * boundary_difference(fi, p)
}

/// `A4(i,s,M+1)`: weight multiplying `u(b)` in row `i <= M - 1`; the mirror
/// of [`coeff_boundary_left`].
pub fn coeff_boundary_right(i: usize, m: usize, params: &SchemeParams, h: f64) -> f64 {
    assert!(i + 1 <= m, "row {i} couples to u(b) through the singular cell, not A4");
    coeff_boundary_left(m + 1 - i, params, h)
}

/// Which of the four one-cell coefficients to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellCoeff {
    /// `(x_k - y)(x_i - y)^(s-1-beta)` on a cell left of `x_i`.
    A1,
    /// `(y - x_{k-1})(x_i - y)^(s-1-beta)` on a cell left of `x_i`.
    A2,
    /// `(x_k - y)(y - x_i)^(s-1-beta)` on a cell right of `x_i`.
    A3,
    /// `(y - x_{k-1})(y - x_i)^(s-1-beta)` on a cell right of `x_i`.
    A4,
}

/// Direct adaptive quadrature of a one-cell coefficient
/// `h^-(s+1) int_{x_{k-1}}^{x_k} hat(y) dist(y)^(s-1-beta) dy` on the grid
/// `x_j = j h`. `s` is passed explicitly so the singular-cell exponent `s1`
/// can be probed too. Independent of the closed forms, meant as a test
/// oracle.
///
/// # Panics
///
/// If the cell touches the singular node `x_i`.
pub fn coeff_quadrature_oracle(kind: CellCoeff, i: usize, k: usize, s: u8, beta: f64, h: f64) -> f64 {
    let left = matches!(kind, CellCoeff::A1 | CellCoeff::A2);
    if left {
        assert!(k < i, "cell [x_{}, x_{}] touches x_{}", k as isize - 1, k, i);
    } else {
        assert!(k >= i + 2, "cell [x_{}, x_{}] touches x_{}", k - 1, k, i);
    }
    let xi = i as f64 * h;
    let lo = (k as f64 - 1.0) * h;
    let hi = k as f64 * h;
    let e = s as f64 - 1.0 - beta;
    let f = |y: f64| {
        let hat = match kind {
            CellCoeff::A1 | CellCoeff::A3 => hi - y,
            CellCoeff::A2 | CellCoeff::A4 => y - lo,
        };
        hat * (y - xi).abs().powf(e)
    };
    adaptive::integrate(f, lo, hi, 0.0, 1e-15) / h.powi(s as i32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(beta: f64, s: u8, s1: u8) -> SchemeParams {
        SchemeParams::new(beta, 0.0, s, s1).unwrap()
    }

    #[test]
    fn pair_sum_reference_values() {
        // 30-digit quadrature of the defining integrals
        assert_relative_eq!(coeff_pair_sum(2, &p(0.5, 0, 0), 1.0), 0.385_505_268_709_251_2, max_relative = 1e-13);
        assert_relative_eq!(coeff_pair_sum(2, &p(1.0, 1, 1), 1.0), 0.523_248_143_764_547_8, max_relative = 1e-13);
    }

    #[test]
    fn pair_sum_series_matches_direct_near_threshold() {
        for &(b, s, s1) in &[(0.3, 0, 0), (0.7, 1, 1), (1.4, 0, 1), (1.8, 1, 1)] {
            let params = p(b, s, s1);
            let (c, pw) = power_prefactor(&params, 1.0);
            let m: f64 = 8.0;
            let direct = c * (2.0 * m.powf(pw) - (m - 1.0).powf(pw) - (m + 1.0).powf(pw));
            assert_relative_eq!(coeff_pair_sum(8, &params, 1.0), direct, max_relative = 1e-11);
        }
    }

    #[test]
    fn near_diag_reference_values() {
        assert_relative_eq!(coeff_near_diag(&p(0.5, 0, 0), 1.0), 2.343_145_750_507_619_8, max_relative = 1e-13);
        assert_relative_eq!(coeff_near_diag(&p(1.0, 1, 1), 1.0), 1.386_294_361_119_890_6, max_relative = 1e-13);
        let damped = SchemeParams::new(0.5, 3.0, 0, 0).unwrap();
        assert_relative_eq!(
            coeff_near_diag(&damped, 0.1),
            coeff_near_diag(&p(0.5, 0, 0), 0.1) * (-0.3f64).exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn boundary_reference_values() {
        assert_relative_eq!(coeff_boundary_left(2, &p(0.5, 0, 0), 1.0), 0.242_640_687_119_285_15, max_relative = 1e-13);
        assert_relative_eq!(coeff_boundary_left(2, &p(1.0, 1, 1), 1.0), 0.306_852_819_440_054_7, max_relative = 1e-13);
    }

    #[test]
    fn boundary_mirror() {
        let params = p(1.3, 1, 1);
        for i in 1..=9 {
            assert_eq!(coeff_boundary_right(i, 10, &params, 0.1), coeff_boundary_left(11 - i, &params, 0.1));
        }
    }

    #[test]
    fn boundary_series_continuity() {
        for &(b, s, s1) in &[(0.5, 0, 0), (0.5, 1, 1), (1.0, 0, 1), (1.0, 1, 1), (1.5, 0, 1), (1.5, 1, 1)] {
            let params = p(b, s, s1);
            for i in [15usize, 16, 17, 40] {
                let oracle = coeff_quadrature_oracle(CellCoeff::A1, i, 1, s, b, 1.0);
                assert_relative_eq!(coeff_boundary_left(i, &params, 1.0), oracle, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn positivity_over_lags() {
        for &(b, s, s1) in &[(0.01, 0, 0), (0.5, 1, 1), (0.99, 0, 0), (1.0, 0, 1), (1.0, 1, 1), (1.5, 0, 1), (1.99, 1, 1)] {
            let params = p(b, s, s1);
            for m in (2..=10_000).step_by(97) {
                assert!(coeff_pair_sum(m, &params, 1.0) > 0.0, "beta={b} s={s} m={m}");
            }
            assert!(coeff_near_diag(&params, 1.0) > 0.0);
        }
    }

    #[test]
    fn oracle_reproduces_adjacent_weight() {
        for &(b, s, s1) in &[(0.5, 0, 0), (0.5, 1, 1), (1.0, 1, 1), (1.7, 0, 1)] {
            let params = p(b, s, s1);
            let oracle = coeff_quadrature_oracle(CellCoeff::A2, 5, 4, s, b, 0.01);
            assert_relative_eq!(adjacent_cell_weight(&params, 0.01), oracle, max_relative = 1e-11);
        }
    }

    #[test]
    #[should_panic]
    fn oracle_rejects_singular_cell() {
        coeff_quadrature_oracle(CellCoeff::A2, 5, 5, 0, 0.5, 1.0);
    }

    #[test]
    #[should_panic]
    fn pair_rejects_lag_one() {
        coeff_pair_sum(1, &p(0.5, 0, 0), 1.0);
    }
}
