// CG against the two preconditioners and a dense LU solve on one system.
//
// $ cargo run --release --example preconditioner_comparison -- 1.5 0.5 11
//
// Arguments: beta, lambda, J (M = 2^J - 1). Dense LU only runs below the dense cap (M < 4096).

use std::time::Instant;

use templap::assembly::{assemble_rhs, OperatorMatrix, DENSE_CAP};
use templap::harness::{example1_f, solve_system, SolverKind};
use templap::{BoundarySpec, Grid, SchemeParams};

fn main() -> templap::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |k: usize, default: f64| args.get(k).map_or(default, |a| a.parse().expect("numeric argument"));
    let (beta, lambda, j) = (arg(0, 1.5), arg(1, 0.5), arg(2, 11.0) as u32);

    let params = SchemeParams::high_order(beta, lambda)?;
    let grid = Grid::new(0.0, 1.0, (1 << j) - 1)?;
    let start = Instant::now();
    let op = OperatorMatrix::assemble(&params, &grid);
    let load = assemble_rhs(&example1_f(&params, &grid), &BoundarySpec::zero(0.0, 1.0), &params, &grid);
    println!("beta = {beta}, lambda = {lambda}, M = {}, assembly {:.3} s", grid.m, start.elapsed().as_secs_f64());

    let exact: Vec<f64> = grid.interior_nodes().iter().map(|&x| x * x * (1.0 - x)).collect();
    let mut solvers = vec![SolverKind::Cg, SolverKind::PcgIchol, SolverKind::PcgTchan];
    if grid.m < DENSE_CAP {
        solvers.push(SolverKind::Dense);
    }
    println!("{:<10} {:>7} {:>11} {:>11}", "solver", "iters", "seconds", "max error");
    for solver in solvers {
        let start = Instant::now();
        let (u, report) = solve_system(&op, &load.values, solver, 1e-9, 10, 100 * grid.m)?;
        let seconds = start.elapsed().as_secs_f64();
        let err = u.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let iters = if solver == SolverKind::Dense { "-".to_string() } else { report.iterations.to_string() };
        println!("{:<10} {:>7} {:>11.4e} {:>11.4e}", solver.to_string(), iters, seconds, err);
    }
    Ok(())
}
