// Mean first exit time from (-r, r): f = 1, g = 0.
//
// $ cargo run --release --example mean_exit_time -- 2
//
// For lambda = 0 the closed form is printed alongside; tempering makes long
// jumps rarer, so the particle stays longer.

use templap::assembly::{assemble_rhs, OperatorMatrix};
use templap::harness::{example3_exact, solve_system, SolverKind};
use templap::{BoundarySpec, Grid, SchemeParams};

fn main() -> templap::Result<()> {
    let radius: f64 = std::env::args().nth(1).map_or(1.0, |a| a.parse().expect("numeric radius"));
    let grid = Grid::new(-radius, radius, 2047)?;
    let boundary = BoundarySpec::zero(-radius, radius);
    let probes = [0.0, 0.5 * radius, 0.9 * radius];

    println!("r = {radius}, M = {}", grid.m);
    println!("beta  lambda  {}", probes.map(|x| format!("u({x:.2})")).join("     "));
    for beta in [0.5, 1.0, 1.5] {
        for lambda in [0.0, 0.5, 3.0] {
            let params = SchemeParams::high_order(beta, lambda)?;
            let op = OperatorMatrix::assemble(&params, &grid);
            let load = assemble_rhs(&vec![1.0; grid.m], &boundary, &params, &grid);
            let (u, _) = solve_system(&op, &load.values, SolverKind::PcgTchan, 1e-10, 10, 10 * grid.m)?;
            let values = probes.map(|x| {
                let i = ((x + radius) / grid.h).round() as usize;
                format!("{:.6}", u[i - 1])
            });
            println!("{beta:<5} {lambda:<7} {}", values.join("  "));
            if lambda == 0.0 {
                let exact = probes.map(|x| format!("{:.6}", example3_exact(&params, radius, x).expect("lambda = 0")));
                println!("{:<13} {}   (exact)", "", exact.join("  "));
            }
        }
    }
    Ok(())
}
