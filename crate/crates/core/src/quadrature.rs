//! Gauss–Jacobi rules, composite Gauss–Legendre panels and an adaptive
//! Gauss–Kronrod integrator.
//!
//! The Gauss–Jacobi nodes come from the eigenvalues of the symmetric Jacobi
//! matrix of the weight `(1 - x)^alpha (1 + x)^beta` (Golub–Welsch). Each node
//! is then polished by Newton steps on the orthonormal recurrence, and the
//! weights are taken from the Christoffel function `1 / sum_k p_k(x)^2`,
//! which stays accurate for nodes crowding the endpoints.

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of a Gauss rule on `[-1, 1]` for the Jacobi weight
/// `(1 - x)^alpha_w (1 + x)^beta_w`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha_w: f64,
    pub beta_w: f64,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_k w_k f(x_k)`, i.e. `int_{-1}^{1} weight(x) f(x) dx`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// `int_lo^hi f(t) dt` for a Legendre rule (weight exponents ignored).
    pub fn integrate_on<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self.integrate(|x| f(mid + half * x))
    }

    /// `int_0^x_max f(t) t^beta_w dt`, using the `(1 + xi)^beta_w` weight of
    /// this rule (`alpha_w` must be 0).
    pub fn integrate_power_weighted<F: FnMut(f64) -> f64>(&self, x_max: f64, mut f: F) -> f64 {
        debug_assert_eq!(self.alpha_w, 0.0);
        let half = 0.5 * x_max;
        half.powf(1.0 + self.beta_w) * self.integrate(|xi| f(half * (1.0 + xi)))
    }
}

fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Recurrence coefficients `(a_k, b_k)` of the orthonormal Jacobi polynomials:
/// `b_{k+1} p_{k+1} = (x - a_k) p_k - b_k p_{k-1}`. Returns `a_0..a_{n-1}` and
/// `b_1..b_n`.
fn jacobi_recurrence(n: usize, al: f64, be: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = al + be;
    let diag = (0..n)
        .map(|k| {
            if k == 0 {
                (be - al) / (ab + 2.0)
            } else {
                let t = 2.0 * k as f64 + ab;
                (be * be - al * al) / (t * (t + 2.0))
            }
        })
        .collect();
    let off = (1..=n)
        .map(|k| {
            let kf = k as f64;
            let t = 2.0 * kf + ab;
            if k == 1 {
                // (k + ab)/(t - 1) cancels to 1 here, including ab = -1
                (4.0 * (1.0 + al) * (1.0 + be) / (t * t * (t + 1.0))).sqrt()
            } else {
                (4.0 * kf * (kf + al) * (kf + be) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0))).sqrt()
            }
        })
        .collect();
    (diag, off)
}

/// Evaluate the orthonormal polynomial `p_n`, its derivative and the
/// Christoffel sum `sum_{k<n} p_k^2` at `x`.
fn orthonormal_eval(x: f64, mu0: f64, a: &[f64], b: &[f64]) -> (f64, f64, f64) {
    let n = a.len();
    let mut p_prev = 0.0;
    let mut dp_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut dp = 0.0;
    let mut christoffel = 0.0;
    for k in 0..n {
        christoffel += p * p;
        let b_k = if k == 0 { 0.0 } else { b[k - 1] };
        let p_next = ((x - a[k]) * p - b_k * p_prev) / b[k];
        let dp_next = (p + (x - a[k]) * dp - b_k * dp_prev) / b[k];
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
    }
    (p, dp, christoffel)
}

/// `n`-point Gauss–Jacobi rule for the weight `(1 - x)^alpha_w (1 + x)^beta_w`.
///
/// Nodes are sorted ascending and lie strictly inside `(-1, 1)`.
///
/// # Panics
///
/// If `n == 0` or either exponent is `<= -1`.
pub fn jacobi_gauss_rule(n: usize, alpha_w: f64, beta_w: f64) -> QuadratureRule {
    assert!(n >= 1, "a Gauss rule needs at least one node");
    assert!(alpha_w > -1.0 && beta_w > -1.0, "Jacobi exponents must exceed -1");
    let (a, b) = jacobi_recurrence(n, alpha_w, beta_w);
    let ln_mu0 = (alpha_w + beta_w + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha_w + 1.0)
        + ln_gamma(beta_w + 1.0)
        - ln_gamma(alpha_w + beta_w + 2.0);
    let mu0 = ln_mu0.exp();

    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = a[k];
        if k + 1 < n {
            jac[(k, k + 1)] = b[k];
            jac[(k + 1, k)] = b[k];
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let weights = nodes
        .iter_mut()
        .map(|x| {
            for _ in 0..3 {
                let (p, dp, _) = orthonormal_eval(*x, mu0, &a, &b);
                if dp == 0.0 {
                    break;
                }
                let step = p / dp;
                *x -= step;
                if step.abs() <= 1e-17 {
                    break;
                }
            }
            let (_, _, christoffel) = orthonormal_eval(*x, mu0, &a, &b);
            1.0 / christoffel
        })
        .collect();
    QuadratureRule {
        nodes,
        weights,
        alpha_w,
        beta_w,
    }
}

/// `n`-point Gauss–Legendre rule.
pub fn gauss_legendre(n: usize) -> QuadratureRule {
    jacobi_gauss_rule(n, 0.0, 0.0)
}

/// Composite Gauss–Legendre integration of `f` over `[t0, t1]` where `f` may
/// be nearly singular at `t = 0` (with `0 < t0`). Panels grow geometrically
/// by `ratio` away from the origin so each panel is separated from the
/// singularity by at least its own length.
pub fn integrate_graded<F: FnMut(f64) -> f64>(
    rule: &QuadratureRule,
    t0: f64,
    t1: f64,
    ratio: f64,
    mut f: F,
) -> f64 {
    debug_assert!(t0 > 0.0 && ratio > 1.0);
    if t1 <= t0 {
        return 0.0;
    }
    let mut total = 0.0;
    let mut lo = t0;
    while lo < t1 {
        let hi = (lo * ratio).min(t1);
        // avoid a sliver panel at the end
        let hi = if hi < t1 && t1 - hi < 0.25 * (hi - lo) { t1 } else { hi };
        total += rule.integrate_on(lo, hi, &mut f);
        lo = hi;
    }
    total
}

/// Adaptive Gauss–Kronrod (7/15) integration over a finite interval.
pub mod adaptive {
    const XGK: [f64; 8] = [
        0.991_455_371_120_812_6,
        0.949_107_912_342_758_5,
        0.864_864_423_359_769_1,
        0.741_531_185_599_394_4,
        0.586_087_235_467_691_1,
        0.405_845_151_377_397_2,
        0.207_784_955_007_898_5,
        0.0,
    ];
    const WGK: [f64; 8] = [
        0.022_935_322_010_529_22,
        0.063_092_092_629_978_55,
        0.104_790_010_322_250_2,
        0.140_653_259_715_525_9,
        0.169_004_726_639_267_9,
        0.190_350_578_064_785_4,
        0.204_432_940_075_298_9,
        0.209_482_141_084_727_8,
    ];
    const WG: [f64; 4] = [
        0.129_484_966_168_869_7,
        0.279_705_391_489_276_7,
        0.381_830_050_505_118_9,
        0.417_959_183_673_469_4,
    ];

    fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let fc = f(c);
        let mut k = WGK[7] * fc;
        let mut g = WG[3] * fc;
        for j in 0..7 {
            let x = h * XGK[j];
            let s = f(c - x) + f(c + x);
            k += WGK[j] * s;
            if j % 2 == 1 {
                g += WG[j / 2] * s;
            }
        }
        (k * h, ((k - g) * h).abs())
    }

    /// `int_a^b f` to absolute tolerance `abs_tol` or relative tolerance
    /// `rel_tol`, whichever is looser, by recursive bisection.
    pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> f64 {
        let (whole, _) = gk15(&mut f, a, b);
        let mut stack = vec![(a, b, 0u32)];
        let mut total = 0.0;
        let scale = whole.abs();
        while let Some((lo, hi, depth)) = stack.pop() {
            let (v, err) = gk15(&mut f, lo, hi);
            let width = (hi - lo) / (b - a);
            let tol = abs_tol.max(rel_tol * scale) * width.max(1e-6);
            if err <= tol || depth >= 48 {
                total += v;
            } else {
                let mid = 0.5 * (lo + hi);
                stack.push((lo, mid, depth + 1));
                stack.push((mid, hi, depth + 1));
            }
        }
        total
    }

    /// `int_t0^inf f` for integrands decaying at infinity, summed over
    /// doubling panels until a panel contributes less than `rel_tol` of the
    /// running total.
    pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(mut f: F, t0: f64, rel_tol: f64) -> f64 {
        assert!(t0 > 0.0);
        let mut total = 0.0;
        let mut lo = t0;
        for _ in 0..400 {
            let hi = 2.0 * lo;
            let part = integrate(&mut f, lo, hi, 0.0, rel_tol * 1e-2);
            total += part;
            if part.abs() <= rel_tol * 1e-3 * total.abs() {
                break;
            }
            lo = hi;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn one_point_legendre() {
        let r = gauss_legendre(1);
        assert_eq!(r.nodes.len(), 1);
        assert!(r.nodes[0].abs() < 1e-15);
        assert_relative_eq!(r.weights[0], 2.0, max_relative = 1e-14);
    }

    #[test]
    fn legendre_exact_degree() {
        let r = gauss_legendre(8);
        assert_relative_eq!(r.integrate(|x| x.powi(6)), 2.0 / 7.0, max_relative = 1e-12);
        assert_relative_eq!(r.integrate(|x| x.powi(14)), 2.0 / 15.0, max_relative = 1e-12);
        assert!(r.integrate(|x| x.powi(15)).abs() < 1e-14);
    }

    #[test]
    fn jacobi_weight_sum() {
        for &n in &[1usize, 5, 64, 128] {
            let r = jacobi_gauss_rule(n, 0.0, 0.5);
            let sum: f64 = r.weights.iter().sum();
            assert_relative_eq!(sum, 2f64.powf(1.5) / 1.5, max_relative = 1e-12);
        }
    }

    #[test]
    fn nodes_sorted_inside() {
        let r = jacobi_gauss_rule(64, 0.0, -0.5);
        assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(r.nodes.iter().all(|&x| x > -1.0 && x < 1.0));
        assert!(r.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn jacobi_moments() {
        // int_{-1}^{1} (1+x)^b x^k dx against a high-order Legendre oracle on (1+x)^b x^k with b integer
        let r = jacobi_gauss_rule(6, 0.0, 2.0);
        let exact: f64 = gauss_legendre(20).integrate(|x| (1.0 + x).powi(2) * x.powi(11));
        assert_relative_eq!(r.integrate(|x| x.powi(11)), exact, max_relative = 1e-12);
    }

    #[test]
    fn graded_panels_handle_near_singularity() {
        let r = gauss_legendre(32);
        let v = integrate_graded(&r, 1e-6, 1.0, 2.0, |t| t.powf(-1.5));
        let exact = 2.0 * (1e-6f64.powf(-0.5) - 1.0);
        assert_relative_eq!(v, exact, max_relative = 1e-13);
    }

    #[test]
    fn adaptive_matches_closed_forms() {
        let v = adaptive::integrate(|x: f64| x.sqrt(), 0.0, 1.0, 0.0, 1e-13);
        assert_relative_eq!(v, 2.0 / 3.0, max_relative = 1e-11);
        let v = adaptive::integrate_to_infinity(|t: f64| (-t).exp() / t, 1.0, 1e-14);
        assert_relative_eq!(v, 0.219_383_934_395_520_27, max_relative = 1e-12);
    }
}
