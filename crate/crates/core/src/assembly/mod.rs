//! Stiffness matrix `H` and load vector `F` of the scheme.
//!
//! Off the diagonal `H` is Toeplitz: `h_{i,j}` depends only on `|i - j|`.
//! The diagonal is fixed by the row-sum identity
//! `h_ii + sum_{j != i} h_ij = B1(i) + B2(i) + w_l(i) + w_r(i)`,
//! where `w_l(i)` and `w_r(i)` are the weights that couple row `i` to `u(a)`
//! and `u(b)` and move into `F`.
//!
//! Every quantity is multiplied by the operator scale (`c_beta` or 1).

pub mod dump;

use nalgebra::DMatrix;

use crate::boundary::{BoundarySpec, ExteriorLoads};
use crate::coeffs::{coeff_boundary_left, coeff_near_diag, coeff_pair_sum, singular_cell_weight};
use crate::error::{Error, Result};
use crate::params::{Grid, SchemeParams};
use crate::tails::all_tails;

/// Largest `M` that [`materialize_dense`] accepts.
pub const DENSE_CAP: usize = 4096;

/// `H` as its diagonal plus the first column of the off-diagonal Toeplitz
/// part. All stored values include the operator scale.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    /// `h_{i,i}`, `i = 1..=M` at index `i - 1`.
    pub diag: Vec<f64>,
    /// `toeplitz_col[m] = h_{i,i+m}` for `m >= 1`; `toeplitz_col[0] = 0`.
    pub toeplitz_col: Vec<f64>,
    /// Scaled `B1(i)`.
    pub tails_left: Vec<f64>,
    /// Scaled `B2(i)`.
    pub tails_right: Vec<f64>,
    pub params: SchemeParams,
    pub grid: Grid,
    /// `c_beta` when `params.apply_cbeta`, else 1.
    pub scale: f64,
}

impl OperatorMatrix {
    pub fn assemble(params: &SchemeParams, grid: &Grid) -> Self {
        let scale = params.operator_scale();
        let toeplitz_col = assemble_offdiagonal(params, grid);
        let (left, right) = all_tails(params, grid);
        let tails_left: Vec<f64> = left.into_iter().map(|b| scale * b).collect();
        let tails_right: Vec<f64> = right.into_iter().map(|b| scale * b).collect();
        let diag = assemble_diagonal(params, grid, &toeplitz_col, &tails_left, &tails_right);
        Self {
            diag,
            toeplitz_col,
            tails_left,
            tails_right,
            params: *params,
            grid: *grid,
            scale,
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entry `h_{i,j}` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else {
            self.toeplitz_col[i.abs_diff(j)]
        }
    }

    /// Scaled weight of `u(a)` in row `i` (1-based).
    pub fn lift_left(&self, i: usize) -> f64 {
        self.scale * lift_weight_left(i, &self.params, &self.grid)
    }

    /// Scaled weight of `u(b)` in row `i` (1-based).
    pub fn lift_right(&self, i: usize) -> f64 {
        self.scale * lift_weight_left(self.grid.m + 1 - i, &self.params, &self.grid)
    }
}

/// Unscaled weight of `u(a)` in row `i`: the singular-cell weight for the
/// first row, `A1(i,s,1) e^{-lambda i h} / i^s` otherwise.
fn lift_weight_left(i: usize, params: &SchemeParams, grid: &Grid) -> f64 {
    let h = grid.h;
    if i == 1 {
        singular_cell_weight(params, h) * (-params.lambda * h).exp()
    } else {
        let fi = i as f64;
        coeff_boundary_left(i, params, h) * (-params.lambda * fi * h).exp() / fi.powi(params.s as i32)
    }
}

/// First column of the off-diagonal part: `col[1] = -near-diagonal weight`,
/// `col[m] = -pair(m) e^{-lambda m h} / m^s` for `m >= 2`, `col[0] = 0`.
pub fn assemble_offdiagonal(params: &SchemeParams, grid: &Grid) -> Vec<f64> {
    let scale = params.operator_scale();
    let h = grid.h;
    let mut col = vec![0.0; grid.m];
    col[1] = -scale * coeff_near_diag(params, h);
    for (m, c) in col.iter_mut().enumerate().skip(2) {
        let mf = m as f64;
        *c = -scale * coeff_pair_sum(m, params, h) * (-params.lambda * mf * h).exp() / mf.powi(params.s as i32);
    }
    col
}

/// Diagonal from the row-sum identity. `tails_*` must already carry the
/// operator scale. Rows `i` and `M + 1 - i` come out bitwise equal.
pub fn assemble_diagonal(
    params: &SchemeParams,
    grid: &Grid,
    toeplitz_col: &[f64],
    tails_left: &[f64],
    tails_right: &[f64],
) -> Vec<f64> {
    let m = grid.m;
    assert_eq!(toeplitz_col.len(), m);
    assert!(tails_left.len() == m && tails_right.len() == m);
    let scale = params.operator_scale();
    // reach[k] = sum_{l=1}^{k} |col[l]|
    let mut reach = vec![0.0; m];
    for k in 1..m {
        reach[k] = reach[k - 1] - toeplitz_col[k];
    }
    let lifts: Vec<f64> = (1..=m).map(|i| scale * lift_weight_left(i, params, grid)).collect();
    (1..=m)
        .map(|i| {
            let coupling = reach[i - 1] + reach[m - i];
            let tails = tails_left[i - 1] + tails_right[i - 1];
            let lift = lifts[i - 1] + lifts[m - i];
            coupling + tails + lift
        })
        .collect()
}

/// Unnormalized exterior loads `(d1(i), d2(i))` for row `i` (1-based).
pub fn boundary_tail_load(i: usize, boundary: &BoundarySpec, params: &SchemeParams, grid: &Grid) -> (f64, f64) {
    assert!((1..=grid.m).contains(&i), "row {i} outside 1..={}", grid.m);
    ExteriorLoads::new(params).at(boundary, grid.node(i))
}

/// Right-hand side `F` of `H U = F`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadVector {
    pub values: Vec<f64>,
}

/// `F_i = f_i + scale (d1(i) + d2(i) + w_l(i) u(a) + w_r(i) u(b))`.
/// `f_values` is the physical right-hand side and is never scaled.
pub fn assemble_rhs(f_values: &[f64], boundary: &BoundarySpec, params: &SchemeParams, grid: &Grid) -> LoadVector {
    let m = grid.m;
    assert_eq!(f_values.len(), m, "f has {} entries for M = {m}", f_values.len());
    debug_assert_eq!(boundary.domain(), (grid.a, grid.b));
    let scale = params.operator_scale();
    let loads = ExteriorLoads::new(params);
    let values = (1..=m)
        .map(|i| {
            let (d1, d2) = loads.at(boundary, grid.node(i));
            let mut lift = d1 + d2;
            if boundary.u_a != 0.0 {
                lift += lift_weight_left(i, params, grid) * boundary.u_a;
            }
            if boundary.u_b != 0.0 {
                lift += lift_weight_left(m + 1 - i, params, grid) * boundary.u_b;
            }
            f_values[i - 1] + scale * lift
        })
        .collect();
    LoadVector { values }
}

/// Dense copy of `H`, refused above [`DENSE_CAP`].
pub fn materialize_dense(op: &OperatorMatrix) -> Result<DMatrix<f64>> {
    materialize_dense_with_cap(op, DENSE_CAP)
}

pub fn materialize_dense_with_cap(op: &OperatorMatrix, cap: usize) -> Result<DMatrix<f64>> {
    let m = op.dim();
    if m > cap {
        return Err(Error::DenseCapExceeded { m, cap });
    }
    Ok(DMatrix::from_fn(m, m, |i, j| op.entry(i, j)))
}
