use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::problems::{Example1, Example2, Example3, Problem};
use crate::assembly::{assemble_rhs, materialize_dense, OperatorMatrix};
use crate::error::{Error, Result};
use crate::linalg::{
    build_band_compensated_ichol, build_tchan_precond, cg_solve, dense_gauss_solve, pcg_solve, FastOperator,
    SolveReport, DEFAULT_BAND,
};
use crate::params::{Grid, SchemeParams};

/// Which of the model problems to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExampleId {
    /// Smooth manufactured solution, zero exterior data.
    One,
    /// Manufactured solution with nonzero exterior data.
    Two,
    /// Mean exit time from `(-radius, radius)`.
    Three { radius: f64 },
}

impl ExampleId {
    pub fn problem(&self) -> Box<dyn Problem> {
        match *self {
            ExampleId::One => Box::new(Example1),
            ExampleId::Two => Box::new(Example2),
            ExampleId::Three { radius } => Box::new(Example3 { radius }),
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            ExampleId::One => 1,
            ExampleId::Two => 2,
            ExampleId::Three { .. } => 3,
        }
    }
}

/// Linear solver used at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Cg,
    PcgIchol,
    PcgTchan,
    Dense,
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "cg" => Ok(SolverKind::Cg),
            "pcg-ichol" => Ok(SolverKind::PcgIchol),
            "pcg-tchan" => Ok(SolverKind::PcgTchan),
            "dense" => Ok(SolverKind::Dense),
            other => Err(Error::Parse(format!(
                "unknown solver {other:?}; expected cg, pcg-ichol, pcg-tchan or dense"
            ))),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Cg => "cg",
            SolverKind::PcgIchol => "pcg-ichol",
            SolverKind::PcgTchan => "pcg-tchan",
            SolverKind::Dense => "dense",
        })
    }
}

/// One convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub example: ExampleId,
    pub params: SchemeParams,
    /// Refinement levels `J`, ascending.
    pub levels: Vec<u32>,
    pub solver: SolverKind,
    /// Relative residual at which the iterative solvers stop.
    pub tol: f64,
    /// Half-bandwidth of the banded preconditioner.
    pub band: usize,
    /// Iteration cap; `None` means `10 M`.
    pub max_iter: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(example: ExampleId, params: SchemeParams, levels: Vec<u32>) -> Self {
        Self {
            example,
            params,
            levels,
            solver: SolverKind::PcgTchan,
            tol: 1e-9,
            band: DEFAULT_BAND,
            max_iter: None,
        }
    }

    pub fn with_solver(mut self, solver: SolverKind) -> Self {
        self.solver = solver;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::InvalidParameter("no refinement levels given".into()));
        }
        if self.levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(format!("levels {:?} are not ascending", self.levels)));
        }
        if self.levels[0] < 2 || *self.levels.last().unwrap() > 24 {
            return Err(Error::InvalidParameter("levels must lie in 2..=24".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance {} must be positive", self.tol)));
        }
        if self.band == 0 {
            return Err(Error::InvalidParameter("band must be at least 1".into()));
        }
        if let ExampleId::Three { radius } = self.example {
            if !(radius > 0.0 && radius.is_finite()) {
                return Err(Error::InvalidParameter(format!("radius {radius} must be positive")));
            }
        }
        Ok(())
    }
}

/// Results at one refinement level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelResult {
    pub j: u32,
    pub m: usize,
    pub h: f64,
    pub l2_error: f64,
    pub linf_error: f64,
    pub l2_rate: Option<f64>,
    pub linf_rate: Option<f64>,
    /// Solver iterations; 0 for the direct solver.
    pub iterations: usize,
    /// Seconds spent in the linear solve.
    pub wall_time: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub levels: Vec<LevelResult>,
    /// Rates carry the `ln h` correction of the `beta = 1`, `s = s1 = 1`
    /// scheme.
    pub log_corrected: bool,
}

impl ConvergenceReport {
    pub fn all_converged(&self) -> bool {
        self.levels.iter().all(|l| l.converged)
    }

    pub fn l2_rates(&self) -> Vec<Option<f64>> {
        self.levels.iter().map(|l| l.l2_rate).collect()
    }

    pub fn linf_rates(&self) -> Vec<Option<f64>> {
        self.levels.iter().map(|l| l.linf_rate).collect()
    }
}

/// Discrete `(L2, Linf)` norms of `reference - approx`, with
/// `L2 = sqrt(h sum d_i^2)`.
pub fn error_norms(reference: &[f64], approx: &[f64], h: f64) -> (f64, f64) {
    assert_eq!(reference.len(), approx.len(), "error of vectors with different lengths");
    let (sq, max) = reference
        .iter()
        .zip(approx)
        .map(|(r, a)| (r - a).abs())
        .fold((0.0, 0.0f64), |(sq, max), d| (sq + d * d, max.max(d)));
    ((h * sq).sqrt(), max)
}

/// Fine-grid values at the coarse nodes: coarse node `i` is fine node `2i`.
pub fn restrict_to_coarse(fine: &[f64]) -> Vec<f64> {
    assert!(fine.len() % 2 == 1, "fine grid with {} nodes is not nested", fine.len());
    fine.iter().skip(1).step_by(2).copied().collect()
}

/// Observed rate between consecutive levels. Plain:
/// `ln(e1/e2) / ln(h1/h2)`; log-corrected:
/// `ln((ln h2 e1) / (ln h1 e2)) / ln(h1/h2)`. The first level, and any pair
/// with a zero or non-finite error, has no rate.
pub fn compute_rates(errors: &[f64], hs: &[f64], log_corrected: bool) -> Vec<Option<f64>> {
    assert_eq!(errors.len(), hs.len());
    let mut rates = vec![None; errors.len()];
    for k in 1..errors.len() {
        let (e1, e2, h1, h2) = (errors[k - 1], errors[k], hs[k - 1], hs[k]);
        if !(e1 > 0.0 && e2 > 0.0 && e1.is_finite() && e2.is_finite()) {
            continue;
        }
        let ratio = if log_corrected { (h2.ln() * e1) / (h1.ln() * e2) } else { e1 / e2 };
        rates[k] = Some(ratio.ln() / (h1 / h2).ln());
    }
    rates
}

/// Solve `H U = F` with the configured solver.
pub fn solve_system(
    op: &OperatorMatrix,
    rhs: &[f64],
    solver: SolverKind,
    tol: f64,
    band: usize,
    max_iter: usize,
) -> Result<(Vec<f64>, SolveReport)> {
    match solver {
        SolverKind::Dense => {
            let start = Instant::now();
            let u = dense_gauss_solve(&materialize_dense(op)?, rhs)?;
            let report = SolveReport {
                iterations: 0,
                relative_residuals: Vec::new(),
                wall_time: start.elapsed().as_secs_f64(),
                converged: true,
            };
            Ok((u, report))
        }
        SolverKind::Cg => Ok(cg_solve(&FastOperator::new(op), rhs, tol, max_iter)),
        SolverKind::PcgIchol => {
            let precond = build_band_compensated_ichol(op, band)?;
            Ok(pcg_solve(&FastOperator::new(op), rhs, &precond, tol, max_iter))
        }
        SolverKind::PcgTchan => {
            let precond = build_tchan_precond(op)?;
            Ok(pcg_solve(&FastOperator::new(op), rhs, &precond, tol, max_iter))
        }
    }
}

struct LevelSolve {
    m: usize,
    h: f64,
    u: Vec<f64>,
    exact: Option<Vec<f64>>,
    report: SolveReport,
}

fn solve_level(config: &ExperimentConfig, problem: &dyn Problem, j: u32) -> Result<LevelSolve> {
    let (a, b) = problem.domain();
    let grid = Grid::new(a, b, problem.nodes_at_level(j))?;
    let params = &config.params;
    let op = OperatorMatrix::assemble(params, &grid);
    let f = problem.rhs(params, &grid)?;
    let load = assemble_rhs(&f, &problem.boundary(), params, &grid);
    let max_iter = config.max_iter.unwrap_or(10 * grid.m);
    let (u, report) = solve_system(&op, &load.values, config.solver, config.tol, config.band, max_iter)?;
    log::info!(
        "J = {j}, M = {}: {} iterations, {:.3e} s, converged = {}",
        grid.m,
        report.iterations,
        report.wall_time,
        report.converged
    );
    Ok(LevelSolve {
        m: grid.m,
        h: grid.h,
        exact: problem.exact(params, &grid),
        u,
        report,
    })
}

/// Assemble, solve and measure errors at every level. Problems without a
/// closed form use `||U_h - U_{h/2}||`, which costs one extra level. A solve
/// that hits the iteration cap marks its level instead of aborting.
pub fn run_convergence_study(config: &ExperimentConfig) -> Result<ConvergenceReport> {
    config.validate()?;
    let problem = config.example.problem();
    let mut levels = Vec::with_capacity(config.levels.len());
    let mut pending: Option<(u32, LevelSolve)> = None;
    for &j in &config.levels {
        let solve = match pending.take() {
            Some((pj, s)) if pj == j => s,
            _ => solve_level(config, problem.as_ref(), j)?,
        };
        let (l2, linf) = match &solve.exact {
            Some(exact) => error_norms(exact, &solve.u, solve.h),
            None => {
                let finer = solve_level(config, problem.as_ref(), j + 1)?;
                if finer.m != 2 * solve.m + 1 {
                    return Err(Error::InvalidParameter(
                        "successive refinement needs nested grids (M = 2^J - 1)".into(),
                    ));
                }
                let norms = error_norms(&restrict_to_coarse(&finer.u), &solve.u, solve.h);
                pending = Some((j + 1, finer));
                norms
            }
        };
        levels.push(LevelResult {
            j,
            m: solve.m,
            h: solve.h,
            l2_error: l2,
            linf_error: linf,
            l2_rate: None,
            linf_rate: None,
            iterations: solve.report.iterations,
            wall_time: solve.report.wall_time,
            converged: solve.report.converged,
        });
    }
    let log_corrected = config.params.log_corrected_rates();
    let hs: Vec<f64> = levels.iter().map(|l| l.h).collect();
    let l2: Vec<f64> = levels.iter().map(|l| l.l2_error).collect();
    let linf: Vec<f64> = levels.iter().map(|l| l.linf_error).collect();
    for (level, (r2, rinf)) in levels
        .iter_mut()
        .zip(compute_rates(&l2, &hs, log_corrected).into_iter().zip(compute_rates(&linf, &hs, log_corrected)))
    {
        level.l2_rate = r2;
        level.linf_rate = rinf;
    }
    Ok(ConvergenceReport { levels, log_corrected })
}
