// Write an assembled system to disk and read it back.
//
// $ cargo run --release --example matrix_dump -- /tmp/system.bin
//
// The file holds the 8-byte magic TFLAP001, then the diagonal, the first
// Toeplitz column and the load vector as little-endian f64.

use std::path::PathBuf;

use templap::assembly::dump::{dump_system, load_system};
use templap::assembly::{assemble_rhs, OperatorMatrix};
use templap::harness::{Example2, Problem};
use templap::{Grid, SchemeParams};

fn main() -> templap::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("templap_system.bin"), PathBuf::from);
    let params = SchemeParams::high_order(1.0, 3.0)?;
    let grid = Grid::new(0.0, 1.0, 64)?;
    let (f, boundary) = (Example2.rhs(&params, &grid)?, Example2.boundary());
    let op = OperatorMatrix::assemble(&params, &grid);
    let load = assemble_rhs(&f, &boundary, &params, &grid);

    dump_system(&path, &op.diag, &op.toeplitz_col, &load.values)?;
    let back = load_system(&path)?;
    assert_eq!(back.diag, op.diag);
    assert_eq!(back.toeplitz_col, op.toeplitz_col);
    assert_eq!(back.rhs, load.values);
    println!("wrote and re-read M = {} system at {}", back.diag.len(), path.display());
    println!("h_11 = {:.12e}, h_12 = {:.12e}, F_1 = {:.12e}", back.diag[0], back.toeplitz_col[1], back.rhs[0]);
    Ok(())
}
