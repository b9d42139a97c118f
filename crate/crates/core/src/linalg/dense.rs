use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Direct LU solve with partial pivoting.
pub fn dense_gauss_solve(matrix: &DMatrix<f64>, rhs: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(matrix.nrows(), rhs.len());
    let b = DVector::from_column_slice(rhs);
    let x = matrix.clone().lu().solve(&b).ok_or(Error::Singular)?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(x.as_slice().to_vec())
}

/// `(lambda_min, lambda_max)` of a symmetric matrix.
pub fn extreme_eigs(matrix: &DMatrix<f64>) -> (f64, f64) {
    let eig = matrix.clone().symmetric_eigen();
    eig.eigenvalues
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// All eigenvalues of a symmetric matrix in ascending order.
pub fn symmetric_eigenvalues(matrix: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = matrix.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}
