// Convergence of both schemes on the manufactured solution u = x^2 (1 - x).
//
// $ cargo run --release --example manufactured_convergence -- 1.5 3
//
// Arguments: beta (default 0.5) and lambda (default 0.5).

use templap::harness::{render, run_convergence_study, ExampleId, ExperimentConfig, ReportFormat};
use templap::SchemeParams;

fn main() -> templap::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let beta = args.next().unwrap_or(0.5);
    let lambda = args.next().unwrap_or(0.5);

    for params in [SchemeParams::low_order(beta, lambda)?, SchemeParams::high_order(beta, lambda)?] {
        let config = ExperimentConfig::new(ExampleId::One, params, (8..=13).collect());
        let report = run_convergence_study(&config)?;
        println!(
            "beta = {beta}, lambda = {lambda}, (s, s1) = ({}, {}), expected order {}{}",
            params.s,
            params.s1,
            params.expected_order(),
            if report.log_corrected { " (rates log-corrected)" } else { "" }
        );
        println!("{}", render(&report, ReportFormat::Markdown));
    }
    Ok(())
}
