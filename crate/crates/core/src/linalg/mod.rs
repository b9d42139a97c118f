//! Fast products with `H`, Krylov solvers and preconditioners.

mod dense;
mod krylov;
mod precond;
mod toeplitz;

use nalgebra::DMatrix;

pub use dense::{dense_gauss_solve, extreme_eigs, symmetric_eigenvalues};
pub use krylov::{cg_solve, pcg_solve, SolveReport};
pub use precond::{
    build_band_compensated_ichol, build_tchan_precond, compensated_band_diagonal, tchan_first_column,
    BandedCholPrecond, CirculantPrecond, DEFAULT_BAND,
};
pub use toeplitz::{toeplitz_matvec, SymToeplitz, SPECTRUM_IMAG_TOLERANCE};

use crate::assembly::OperatorMatrix;

/// A symmetric positive definite operator `y = A x`.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// An approximation `z = B^{-1} r` of the inverse.
pub trait Preconditioner {
    fn apply(&self, r: &[f64], z: &mut [f64]);
}

/// No preconditioning.
#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl Preconditioner for Identity {
    fn apply(&self, r: &[f64], z: &mut [f64]) {
        z.copy_from_slice(r);
    }
}

impl LinearOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

/// A dense matrix used as the preconditioner itself: `z = P r`.
impl Preconditioner for DMatrix<f64> {
    fn apply(&self, r: &[f64], z: &mut [f64]) {
        LinearOperator::apply(self, r, z);
    }
}

/// `H = D + (H - D)` with the off-diagonal part applied by FFT.
#[derive(Debug, Clone)]
pub struct FastOperator {
    diag: Vec<f64>,
    offdiag: SymToeplitz,
}

impl FastOperator {
    pub fn new(op: &OperatorMatrix) -> Self {
        let mut col = op.toeplitz_col.clone();
        col[0] = 0.0;
        Self {
            diag: op.diag.clone(),
            offdiag: SymToeplitz::new(col),
        }
    }
}

impl LinearOperator for FastOperator {
    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.offdiag.matvec_into(x, y);
        for ((yi, d), xi) in y.iter_mut().zip(&self.diag).zip(x) {
            *yi += d * xi;
        }
    }
}

/// `H v` in `O(M log M)`.
pub fn operator_matvec(op: &OperatorMatrix, v: &[f64]) -> Vec<f64> {
    let fast = FastOperator::new(op);
    let mut y = vec![0.0; v.len()];
    fast.apply(v, &mut y);
    y
}
