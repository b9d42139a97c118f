// The continuous operator by direct quadrature, against the discrete H U.
//
// $ cargo run --release --example reference_operator
//
// For a smooth u the gap closes at the scheme's order as h shrinks.

use templap::assembly::OperatorMatrix;
use templap::linalg::operator_matvec;
use templap::reference::ReferenceOperator;
use templap::{BoundarySpec, Grid, SchemeParams};

fn main() -> templap::Result<()> {
    let u = |x: f64| (std::f64::consts::PI * x).sin().powi(2);
    let boundary = BoundarySpec::zero(0.0, 1.0);
    for params in [SchemeParams::high_order(0.6, 2.0)?, SchemeParams::high_order(1.4, 0.5)?] {
        let reference = ReferenceOperator::new(&params, &boundary);
        println!("beta = {}, lambda = {}, (s, s1) = (1, 1)", params.beta, params.lambda);
        for j in 5..=9 {
            let grid = Grid::new(0.0, 1.0, (1 << j) - 1)?;
            let nodes = grid.interior_nodes();
            let values: Vec<f64> = nodes.iter().map(|&x| u(x)).collect();
            let discrete = operator_matvec(&OperatorMatrix::assemble(&params, &grid), &values);
            let mid = grid.m / 2;
            let exact = reference.apply(u, nodes[mid])?;
            println!("  M = {:>4}: (H U)(1/2) = {:.10}, reference {:.10}, gap {:.3e}", grid.m, discrete[mid], exact, (discrete[mid] - exact).abs());
        }
    }
    Ok(())
}
