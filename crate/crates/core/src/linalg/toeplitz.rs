use std::sync::{Arc, Mutex};

use realfft::num_complex::Complex;
use realfft::{ComplexToReal, RealFftPlanner, RealToComplex};

use crate::error::{Error, Result};

/// Imaginary parts of a symmetric circulant's spectrum up to this multiple of
/// its largest modulus are rounding and get dropped.
pub const SPECTRUM_IMAG_TOLERANCE: f64 = 1e-13;

struct Workspace {
    real: Vec<f64>,
    bins: Vec<Complex<f64>>,
    scratch_forward: Vec<Complex<f64>>,
    scratch_inverse: Vec<Complex<f64>>,
}

/// Products with an `n x n` real symmetric circulant by real-input FFTs.
/// Only the `n/2 + 1` distinct eigenvalues are stored. The buffers are
/// reused across calls; concurrent callers serialize on them.
pub(crate) struct RealCirculant {
    half_spectrum: Vec<f64>,
    forward: Arc<dyn RealToComplex<f64>>,
    inverse: Arc<dyn ComplexToReal<f64>>,
    work: Mutex<Workspace>,
}

impl RealCirculant {
    /// Fails when the first column is not symmetric enough for a real
    /// spectrum.
    pub(crate) fn new(first_col: &[f64]) -> Result<Self> {
        let n = first_col.len();
        assert!(n > 0, "empty circulant");
        let mut planner = RealFftPlanner::<f64>::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let mut work = Workspace {
            real: first_col.to_vec(),
            bins: forward.make_output_vec(),
            scratch_forward: forward.make_scratch_vec(),
            scratch_inverse: inverse.make_scratch_vec(),
        };
        forward
            .process_with_scratch(&mut work.real, &mut work.bins, &mut work.scratch_forward)
            .expect("buffer sizes come from the plan");
        let scale = work.bins.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let residue = work.bins.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / scale;
        if residue > SPECTRUM_IMAG_TOLERANCE {
            return Err(Error::ComplexSpectrum { residue });
        }
        Ok(Self {
            half_spectrum: work.bins.iter().map(|z| z.re).collect(),
            forward,
            inverse,
            work: Mutex::new(work),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.forward.len()
    }

    /// Eigenvalues `lambda_0 .. lambda_{n-1}`; `lambda_k = lambda_{n-k}`.
    pub(crate) fn eigenvalues(&self) -> Vec<f64> {
        let n = self.len();
        (0..n).map(|k| self.half_spectrum[k.min(n - k)]).collect()
    }

    pub(crate) fn half_spectrum(&self) -> &[f64] {
        &self.half_spectrum
    }

    /// `y = C v` (or `C^{-1} v` with `invert`) where `v` is zero-padded to
    /// length `n` and `y` receives the leading entries.
    pub(crate) fn apply(&self, v: &[f64], y: &mut [f64], invert: bool) {
        let n = self.len();
        assert!(v.len() <= n && y.len() <= n);
        let mut guard = self.work.lock().unwrap_or_else(|e| e.into_inner());
        let w = &mut *guard;
        w.real[..v.len()].copy_from_slice(v);
        w.real[v.len()..].fill(0.0);
        self.forward
            .process_with_scratch(&mut w.real, &mut w.bins, &mut w.scratch_forward)
            .expect("buffer sizes come from the plan");
        let inv_n = 1.0 / n as f64;
        for (b, &s) in w.bins.iter_mut().zip(&self.half_spectrum) {
            *b *= if invert { inv_n / s } else { s * inv_n };
        }
        // the zero and Nyquist bins of a real signal are real
        w.bins[0].im = 0.0;
        if n % 2 == 0 {
            w.bins[n / 2].im = 0.0;
        }
        self.inverse
            .process_with_scratch(&mut w.bins, &mut w.real, &mut w.scratch_inverse)
            .expect("buffer sizes come from the plan");
        y.copy_from_slice(&w.real[..y.len()]);
    }
}

impl Clone for RealCirculant {
    fn clone(&self) -> Self {
        let work = Workspace {
            real: vec![0.0; self.len()],
            bins: self.forward.make_output_vec(),
            scratch_forward: self.forward.make_scratch_vec(),
            scratch_inverse: self.inverse.make_scratch_vec(),
        };
        Self {
            half_spectrum: self.half_spectrum.clone(),
            forward: Arc::clone(&self.forward),
            inverse: Arc::clone(&self.inverse),
            work: Mutex::new(work),
        }
    }
}

/// Symmetric Toeplitz matrix `T_{ij} = t_{|i-j|}` with an `O(M log M)`
/// product through a zero-padded circulant embedding of power-of-two size
/// `>= 2M`.
#[derive(Clone)]
pub struct SymToeplitz {
    first_col: Vec<f64>,
    embedding: RealCirculant,
}

impl std::fmt::Debug for SymToeplitz {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymToeplitz")
            .field("dim", &self.first_col.len())
            .field("embedding", &self.embedding.len())
            .finish()
    }
}

impl SymToeplitz {
    pub fn new(first_col: Vec<f64>) -> Self {
        let m = first_col.len();
        assert!(m > 0, "empty Toeplitz matrix");
        let n = (2 * m).next_power_of_two();
        let mut embedded = vec![0.0; n];
        embedded[..m].copy_from_slice(&first_col);
        for k in 1..m {
            embedded[n - k] = first_col[k];
        }
        let embedding = RealCirculant::new(&embedded).expect("a symmetric embedding has a real spectrum");
        Self { first_col, embedding }
    }

    pub fn dim(&self) -> usize {
        self.first_col.len()
    }

    pub fn first_col(&self) -> &[f64] {
        &self.first_col
    }

    /// `y = T v`.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.matvec_into(v, &mut y);
        y
    }

    /// `y = T v` into a caller-owned buffer.
    pub fn matvec_into(&self, v: &[f64], y: &mut [f64]) {
        let m = self.dim();
        assert!(v.len() == m && y.len() == m, "length mismatch: T is {m}x{m}");
        self.embedding.apply(v, y, false);
    }
}

/// `y = T v` for a one-off product.
pub fn toeplitz_matvec(t: &SymToeplitz, v: &[f64]) -> Vec<f64> {
    t.matvec(v)
}
