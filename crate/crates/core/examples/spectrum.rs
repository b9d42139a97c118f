// Eigenvalues of H and of the T. Chan preconditioned matrix.
//
// $ cargo run --release --example spectrum -- 0.8 1
//
// The spectrum of H spreads like h^-beta above a floor set by the tail
// integrals; after preconditioning it clusters around 1.

use nalgebra::DMatrix;
use templap::assembly::{materialize_dense, OperatorMatrix};
use templap::linalg::{build_tchan_precond, extreme_eigs, symmetric_eigenvalues};
use templap::{Grid, SchemeParams};

fn main() -> templap::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let (beta, lambda) = (args.first().copied().unwrap_or(0.8), args.get(1).copied().unwrap_or(1.0));
    let params = SchemeParams::high_order(beta, lambda)?;

    println!("beta = {beta}, lambda = {lambda}");
    println!("{:>5} {:>12} {:>12} {:>12} {:>10}", "M", "lambda_min", "lambda_max", "floor", "cond");
    for m in [63, 127, 255, 511] {
        let op = OperatorMatrix::assemble(&params, &Grid::new(0.0, 1.0, m)?);
        let h = materialize_dense(&op)?;
        let (lo, hi) = extreme_eigs(&h);
        let floor = (0..m)
            .map(|i| op.diag[i] - (0..m).filter(|&j| j != i).map(|j| op.entry(i, j).abs()).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        println!("{m:>5} {lo:>12.5e} {hi:>12.5e} {floor:>12.5e} {:>10.1}", hi / lo);
    }

    // C^{-1/2} H C^{-1/2} has the same eigenvalues as C^{-1} H
    let m = 255;
    let op = OperatorMatrix::assemble(&params, &Grid::new(0.0, 1.0, m)?);
    let precond = build_tchan_precond(&op)?;
    let h = materialize_dense(&op)?;
    let c = DMatrix::from_fn(m, m, |i, j| precond.first_col[(i + m - j) % m]);
    let c_inv_sqrt = c.symmetric_eigen();
    let q = &c_inv_sqrt.eigenvectors;
    let d = DMatrix::from_diagonal(&c_inv_sqrt.eigenvalues.map(|v| 1.0 / v.sqrt()));
    let s = q * d * q.transpose();
    let eig = symmetric_eigenvalues(&(&s * h * &s));
    let outside = eig.iter().filter(|&&v| (v - 1.0).abs() > 0.1).count();
    println!(
        "M = {m}, T. Chan preconditioned: eigenvalues in [{:.4}, {:.4}], {outside} of {m} outside [0.9, 1.1]",
        eig[0],
        eig[m - 1]
    );
    Ok(())
}
