// Problems with nonzero exterior data.
//
// $ cargo run --release --example exterior_data
//
// First the built-in discontinuous data (-2y on [-1/2, 0], 2y - 2 on
// [1, 3/2]), then g = 1 everywhere outside: constants are in the kernel of
// the untempered operator, so with f = 0 the discrete solution is 1 up to
// solver tolerance.

use templap::assembly::{assemble_rhs, OperatorMatrix};
use templap::harness::{render, run_convergence_study, solve_system, ExampleId, ExperimentConfig, ReportFormat, SolverKind};
use templap::{BoundarySpec, Grid, SchemeParams};

fn main() -> templap::Result<()> {
    for (beta, lambda) in [(0.5, 0.0), (1.5, 3.0)] {
        let params = SchemeParams::high_order(beta, lambda)?;
        let report = run_convergence_study(&ExperimentConfig::new(ExampleId::Two, params, vec![8, 9, 10, 11]))?;
        println!("exterior pieces, beta = {beta}, lambda = {lambda}");
        println!("{}", render(&report, ReportFormat::Markdown));
    }

    let params = SchemeParams::high_order(0.7, 0.0)?;
    let grid = Grid::new(-1.0, 1.0, 511)?;
    let boundary = BoundarySpec::constant(-1.0, 1.0, 1.0);
    let op = OperatorMatrix::assemble(&params, &grid);
    let load = assemble_rhs(&vec![0.0; grid.m], &boundary, &params, &grid);
    let (u, _) = solve_system(&op, &load.values, SolverKind::PcgTchan, 1e-12, 10, 1000)?;
    let worst = u.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    println!("g = 1 outside, f = 0: max |U - 1| = {worst:.2e}");

    // a far-field constant on each side plus a bump on [1.2, 1.4]
    let bump = BoundarySpec::new(
        -1.0,
        1.0,
        |y: f64| {
            if y <= -1.0 {
                0.5
            } else if (1.2..=1.4).contains(&y) {
                2.0
            } else {
                0.0
            }
        },
        vec![(1.2, 1.4)],
        (0.5, 0.0),
        0.5,
        0.0,
    )?;
    let load = assemble_rhs(&vec![0.0; grid.m], &bump, &params, &grid);
    let (u, _) = solve_system(&op, &load.values, SolverKind::PcgTchan, 1e-12, 10, 1000)?;
    for i in [1, grid.m / 4, grid.m / 2, 3 * grid.m / 4, grid.m] {
        println!("u({:+.4}) = {:.6}", grid.node(i), u[i - 1]);
    }
    Ok(())
}
