//! Brute-force oracles shared by the integration tests. Everything here is
//! assembled cell by cell from direct quadrature, without the closed forms.

#![allow(dead_code)]

use nalgebra::DMatrix;
use templap::coeffs::{coeff_quadrature_oracle, CellCoeff};
use templap::quadrature::adaptive;
use templap::{BoundarySpec, Grid, SchemeParams};

/// `int_d^inf e^{-lambda t} t^{-1-beta} dt` by adaptive panels.
pub fn tail_oracle(beta: f64, lambda: f64, d: f64) -> f64 {
    adaptive::integrate_to_infinity(|t| (-lambda * t).exp() * t.powf(-1.0 - beta), d, 1e-12)
}

/// Exterior loads `(d1, d2)` at `x` for data supported on bounded pieces
/// plus a constant far field, by direct quadrature.
pub fn exterior_load_oracle(boundary: &BoundarySpec, params: &SchemeParams, x: f64) -> (f64, f64) {
    let (a, b) = boundary.domain();
    let (far_l, far_r) = boundary.far_field();
    let kernel = |y: f64| {
        let r = (x - y).abs();
        (-params.lambda * r).exp() * r.powf(-1.0 - params.beta)
    };
    let mut d1 = far_l * tail_oracle(params.beta, params.lambda, x - a);
    let mut d2 = far_r * tail_oracle(params.beta, params.lambda, b - x);
    for &(lo, hi) in boundary.pieces() {
        let far = if hi <= a { far_l } else { far_r };
        let v = adaptive::integrate(|y| (boundary.g(y) - far) * kernel(y), lo, hi, 1e-15, 1e-14);
        if hi <= a {
            d1 += v;
        } else {
            d2 += v;
        }
    }
    (d1, d2)
}

/// Weights `w[j]`, `j = 0..=M+1`, of row `i` (1-based): the row reads
/// `sum_j w[j] (u_i - u_j)` plus the tails. Requires `grid.a == 0`.
fn row_weights(i: usize, params: &SchemeParams, grid: &Grid) -> Vec<f64> {
    assert_eq!(grid.a, 0.0, "the cell oracle places x_j at j h");
    let (m, h, s) = (grid.m, grid.h, params.s);
    let (b, l) = (params.beta, params.lambda);
    let singular = h.powf(-b) / (params.s1 as f64 + 1.0 - b) * (-l * h).exp();
    let mut w = vec![0.0; m + 2];
    for (j, wj) in w.iter_mut().enumerate() {
        if j == i {
            continue;
        }
        let lag = i.abs_diff(j);
        let damp = (-l * lag as f64 * h).exp() / (lag as f64).powi(s as i32);
        let mut c = 0.0;
        if j < i {
            if j >= 1 {
                c += coeff_quadrature_oracle(CellCoeff::A2, i, j, s, b, h);
            }
            if j + 1 < i {
                c += coeff_quadrature_oracle(CellCoeff::A1, i, j + 1, s, b, h);
            }
        } else {
            if j <= m {
                c += coeff_quadrature_oracle(CellCoeff::A3, i, j + 1, s, b, h);
            }
            if j >= i + 2 {
                c += coeff_quadrature_oracle(CellCoeff::A4, i, j, s, b, h);
            }
        }
        *wj = c * damp + if lag == 1 { singular } else { 0.0 };
    }
    w
}

/// Dense `H` and load `F` assembled entry by entry, including the operator
/// scale.
pub fn brute_force_system(
    params: &SchemeParams,
    grid: &Grid,
    boundary: &BoundarySpec,
    f: &[f64],
) -> (DMatrix<f64>, Vec<f64>) {
    let m = grid.m;
    let scale = params.operator_scale();
    let mut h = DMatrix::zeros(m, m);
    let mut rhs = vec![0.0; m];
    for i in 1..=m {
        let w = row_weights(i, params, grid);
        let x = grid.node(i);
        let tails = tail_oracle(params.beta, params.lambda, x - grid.a) + tail_oracle(params.beta, params.lambda, grid.b - x);
        h[(i - 1, i - 1)] = scale * (w.iter().sum::<f64>() + tails);
        for j in 1..=m {
            if j != i {
                h[(i - 1, j - 1)] = -scale * w[j];
            }
        }
        let (d1, d2) = exterior_load_oracle(boundary, params, x);
        rhs[i - 1] = f[i - 1] + scale * (d1 + d2 + w[0] * boundary.u_a + w[m + 1] * boundary.u_b);
    }
    (h, rhs)
}

/// Largest entrywise relative deviation `|a - b| / max(|b|, floor)`.
pub fn max_relative_deviation(a: &[f64], b: &[f64], floor: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(floor))
        .fold(0.0, f64::max)
}
