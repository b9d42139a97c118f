// Drive a study from `key = value` text, the format `templap --config` reads.
//
// $ cargo run --release --example config_file

use templap::harness::{render, run_convergence_study, RunOptions};

const STUDY: &str = "
# exit time from (-2, 2), untempered
example = 3
radius = 2
beta = 1.5
lambda = 0
scheme = 1,1
levels = 8..11
format = csv
";

fn main() -> templap::Result<()> {
    let plan = RunOptions::from_key_values(STUDY)?.resolve()?;
    let report = run_convergence_study(&plan.config)?;
    print!("{}", render(&report, plan.format));
    Ok(())
}
