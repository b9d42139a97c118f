use super::toeplitz::RealCirculant;
use super::Preconditioner;
use crate::assembly::OperatorMatrix;
use crate::error::{Error, Result};

/// Default half-bandwidth of the banded preconditioner.
pub const DEFAULT_BAND: usize = 10;

/// `B = L L^T` with `L` the Cholesky factor of the band of `H` whose
/// diagonal is compensated so that `G e = H e`.
#[derive(Debug, Clone)]
pub struct BandedCholPrecond {
    pub bandwidth: usize,
    /// `lower[i][d] = L_{i, i-d}` for `d = 0..=min(i, k)`.
    lower: Vec<Vec<f64>>,
}

impl BandedCholPrecond {
    /// `L_{i,j}` for 0-based indices, zero outside the band.
    pub fn factor_entry(&self, i: usize, j: usize) -> f64 {
        if j > i || i - j > self.bandwidth {
            0.0
        } else {
            self.lower[i][i - j]
        }
    }
}

/// Diagonal of the compensated band matrix `G`: each row's off-band mass is
/// folded back onto its diagonal.
pub fn compensated_band_diagonal(op: &OperatorMatrix, k: usize) -> Vec<f64> {
    let m = op.dim();
    let col = &op.toeplitz_col;
    // reach[d] = sum_{l=1}^{d} col[l]
    let mut reach = vec![0.0; m];
    for d in 1..m {
        reach[d] = reach[d - 1] + col[d];
    }
    (0..m)
        .map(|i| {
            let (left, right) = (i, m - 1 - i);
            let dropped = (reach[left] - reach[left.min(k)]) + (reach[right] - reach[right.min(k)]);
            op.diag[i] + dropped
        })
        .collect()
}

/// Factor the compensated band of `H` with half-bandwidth `k`. The band of a
/// banded matrix admits no fill, so this is the zero-fill incomplete Cholesky
/// on that pattern.
pub fn build_band_compensated_ichol(op: &OperatorMatrix, k: usize) -> Result<BandedCholPrecond> {
    let m = op.dim();
    if k == 0 {
        return Err(Error::InvalidParameter("bandwidth must be at least 1".into()));
    }
    let k = k.min(m.saturating_sub(1)).max(1);
    let g_diag = compensated_band_diagonal(op, k);
    let col = &op.toeplitz_col;
    let mut lower: Vec<Vec<f64>> = (0..m).map(|i| vec![0.0; i.min(k) + 1]).collect();
    for j in 0..m {
        let jlo = j.saturating_sub(k);
        let mut pivot = g_diag[j];
        for p in jlo..j {
            let l = lower[j][j - p];
            pivot -= l * l;
        }
        if !(pivot > 0.0) {
            return Err(Error::NonPositivePivot { row: j, value: pivot });
        }
        let ljj = pivot.sqrt();
        lower[j][0] = ljj;
        for i in j + 1..(j + k + 1).min(m) {
            let mut v = col[i - j];
            for p in i.saturating_sub(k)..j {
                v -= lower[i][i - p] * lower[j][j - p];
            }
            lower[i][i - j] = v / ljj;
        }
    }
    Ok(BandedCholPrecond { bandwidth: k, lower })
}

impl Preconditioner for BandedCholPrecond {
    fn apply(&self, r: &[f64], z: &mut [f64]) {
        let m = self.lower.len();
        let k = self.bandwidth;
        // L y = r
        for i in 0..m {
            let row = &self.lower[i];
            let mut v = r[i];
            for d in 1..row.len() {
                v -= row[d] * z[i - d];
            }
            z[i] = v / row[0];
        }
        // L^T z = y
        for i in (0..m).rev() {
            let mut v = z[i];
            for d in 1..=k.min(m - 1 - i) {
                v -= self.lower[i + d][d] * z[i + d];
            }
            z[i] = v / self.lower[i][0];
        }
    }
}

/// Inverse of a circulant approximation of `H`, applied by FFT.
#[derive(Clone)]
pub struct CirculantPrecond {
    pub first_col: Vec<f64>,
    circulant: RealCirculant,
}

impl std::fmt::Debug for CirculantPrecond {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CirculantPrecond")
            .field("first_col", &self.first_col)
            .field("spectrum", &self.circulant.half_spectrum())
            .finish()
    }
}

/// T. Chan's optimal circulant of a symmetric Toeplitz matrix with first
/// column `t`: `c_k = ((M - k) t_k + k t_{M-k}) / M`.
pub fn tchan_first_column(t: &[f64]) -> Vec<f64> {
    let m = t.len();
    let mf = m as f64;
    (0..m)
        .map(|k| {
            if k == 0 {
                t[0]
            } else {
                ((m - k) as f64 * t[k] + k as f64 * t[m - k]) / mf
            }
        })
        .collect()
}

impl CirculantPrecond {
    /// Circulant with the given symmetric first column. Fails unless every
    /// eigenvalue is positive.
    pub fn from_first_column(first_col: Vec<f64>) -> Result<Self> {
        let circulant = RealCirculant::new(&first_col)?;
        if let Some((index, &value)) = circulant.half_spectrum().iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
            return Err(Error::NonPositiveCirculant { index, value });
        }
        Ok(Self { first_col, circulant })
    }

    /// All `M` eigenvalues, in DFT order.
    pub fn spectrum(&self) -> Vec<f64> {
        self.circulant.eigenvalues()
    }

    /// `C v`.
    pub fn multiply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        self.circulant.apply(v, &mut out, false);
        out
    }
}

impl Preconditioner for CirculantPrecond {
    fn apply(&self, r: &[f64], z: &mut [f64]) {
        self.circulant.apply(r, z, true);
    }
}

/// T. Chan preconditioner of the Toeplitz surrogate
/// `G = mean(diag H) I + (H - D)`.
pub fn build_tchan_precond(op: &OperatorMatrix) -> Result<CirculantPrecond> {
    let m = op.dim();
    let mut t = op.toeplitz_col.clone();
    t[0] = op.diag.iter().sum::<f64>() / m as f64;
    CirculantPrecond::from_first_column(tchan_first_column(&t))
}
