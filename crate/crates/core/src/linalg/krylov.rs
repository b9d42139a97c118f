use std::time::Instant;

use super::{LinearOperator, Preconditioner};

/// Outcome of an iterative solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    /// `||r_k|| / ||r_0||` after each iteration `k = 1..=iterations`.
    pub relative_residuals: Vec<f64>,
    /// Seconds spent in the iteration, setup excluded.
    pub wall_time: f64,
    pub converged: bool,
}

impl SolveReport {
    pub fn final_residual(&self) -> f64 {
        self.relative_residuals.last().copied().unwrap_or(0.0)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Conjugate gradients from `U_0 = 0`, stopping once
/// `||F - H U_k|| / ||F|| <= tol`. Reaching `max_iter` returns the current
/// iterate with `converged = false`.
pub fn cg_solve<A: LinearOperator + ?Sized>(op: &A, rhs: &[f64], tol: f64, max_iter: usize) -> (Vec<f64>, SolveReport) {
    pcg_solve(op, rhs, &super::Identity, tol, max_iter)
}

/// Preconditioned conjugate gradients from `U_0 = 0`. The stopping test uses
/// the unpreconditioned residual `r_k = F - H U_k`, same as [`cg_solve`].
pub fn pcg_solve<A, P>(op: &A, rhs: &[f64], precond: &P, tol: f64, max_iter: usize) -> (Vec<f64>, SolveReport)
where
    A: LinearOperator + ?Sized,
    P: Preconditioner + ?Sized,
{
    let m = op.dim();
    assert_eq!(rhs.len(), m, "right-hand side has {} entries for a {m}x{m} operator", rhs.len());
    let start = Instant::now();
    let mut x = vec![0.0; m];
    let mut r = rhs.to_vec();
    let r0 = norm(&r);
    let mut report = SolveReport {
        iterations: 0,
        relative_residuals: Vec::new(),
        wall_time: 0.0,
        converged: true,
    };
    if r0 == 0.0 {
        return (x, report);
    }
    let mut z = vec![0.0; m];
    precond.apply(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut hp = vec![0.0; m];
    report.converged = false;
    while report.iterations < max_iter {
        op.apply(&p, &mut hp);
        let alpha = rz / dot(&p, &hp);
        for i in 0..m {
            x[i] += alpha * p[i];
            r[i] -= alpha * hp[i];
        }
        report.iterations += 1;
        let rel = norm(&r) / r0;
        report.relative_residuals.push(rel);
        if rel <= tol {
            report.converged = true;
            break;
        }
        precond.apply(&r, &mut z);
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..m {
            p[i] = z[i] + beta * p[i];
        }
    }
    report.wall_time = start.elapsed().as_secs_f64();
    if !report.converged {
        log::warn!(
            "CG stopped after {} iterations at relative residual {:e}",
            report.iterations,
            report.final_residual()
        );
    }
    (x, report)
}
