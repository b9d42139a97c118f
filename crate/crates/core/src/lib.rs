//! Finite-difference solvers for the one-dimensional tempered fractional
//! Laplacian
//!
//! ```text
//! -(Delta + lambda)^{beta/2} u = f  on (a, b),   u = g  outside,
//! ```
//!
//! with `beta` in `(0, 2)` and `lambda >= 0`. The discrete operator is an
//! M-matrix whose off-diagonal part is symmetric Toeplitz, so products cost
//! `O(M log M)` and circulant or banded preconditioners make CG converge in
//! a handful of iterations.
//!
//! ```
//! use templap::{assembly, harness, linalg, BoundarySpec, Grid, SchemeParams};
//!
//! let params = SchemeParams::high_order(0.5, 3.0)?;
//! let grid = Grid::new(0.0, 1.0, 255)?;
//! let op = assembly::OperatorMatrix::assemble(&params, &grid);
//! let f = harness::example1_f(&params, &grid);
//! let load = assembly::assemble_rhs(&f, &BoundarySpec::zero(0.0, 1.0), &params, &grid);
//! let precond = linalg::build_tchan_precond(&op)?;
//! let (u, report) = linalg::pcg_solve(&linalg::FastOperator::new(&op), &load.values, &precond, 1e-9, 500);
//! assert!(report.converged);
//! # let _ = u;
//! # Ok::<(), templap::Error>(())
//! ```

pub mod assembly;
pub mod boundary;
pub mod coeffs;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod params;
pub mod quadrature;
pub mod reference;
pub mod special;
pub mod tails;

pub use boundary::BoundarySpec;
pub use error::{Error, Result};
pub use params::{Grid, SchemeParams};
