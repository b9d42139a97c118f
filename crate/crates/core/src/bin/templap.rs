// Convergence studies from the command line.
//
// $ templap --example 1 --beta 0.5 --lambda 0.5 --scheme 0,0 --levels 10..13
//
// Settings may also come from a `key = value` file given with --config;
// flags win over the file. Exit status: 0 on success, 1 on bad input or a
// failed run, 2 when some level stopped at the iteration cap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use templap::harness::config::{parse_levels, parse_scheme};
use templap::harness::{emit_report, render, run_convergence_study, ReportFormat, RunOptions, SolverKind};

/// A parsed level list; the newtype keeps clap from treating it as a
/// repeated argument.
#[derive(Debug, Clone)]
struct Levels(Vec<u32>);

#[derive(Debug, Parser)]
#[command(name = "templap", version, about = "Tempered fractional Laplacian convergence studies")]
struct Cli {
    /// Model problem: 1 manufactured, 2 exterior data, 3 mean exit time.
    #[arg(long)]
    example: Option<u8>,
    /// Fractional order in (0, 2).
    #[arg(long)]
    beta: Option<f64>,
    /// Tempering rate, >= 0.
    #[arg(long)]
    lambda: Option<f64>,
    /// Scheme selectors as S,S1.
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<(u8, u8)>,
    /// Refinement levels, e.g. 10..13 or 10,12.
    #[arg(long, value_parser = |s: &str| parse_levels(s).map(Levels))]
    levels: Option<Levels>,
    /// cg, pcg-ichol, pcg-tchan or dense.
    #[arg(long)]
    solver: Option<SolverKind>,
    /// Relative residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Half-bandwidth of the ichol preconditioner.
    #[arg(long)]
    band: Option<usize>,
    /// Iteration cap per solve (default 10 x M).
    #[arg(long)]
    max_iter: Option<usize>,
    /// Half-width r of the domain (-r, r) for example 3.
    #[arg(long)]
    radius: Option<f64>,
    /// Drop the normalization constant c_beta from the operator.
    #[arg(long)]
    no_cbeta: bool,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or markdown.
    #[arg(long)]
    format: Option<ReportFormat>,
    /// `key = value` settings file.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Cli {
    fn options(&self) -> RunOptions {
        RunOptions {
            example: self.example,
            beta: self.beta,
            lambda: self.lambda,
            scheme: self.scheme,
            levels: self.levels.clone().map(|l| l.0),
            solver: self.solver,
            tol: self.tol,
            band: self.band,
            max_iter: self.max_iter,
            no_cbeta: self.no_cbeta.then_some(true),
            radius: self.radius,
            out: self.out.clone(),
            format: self.format,
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let base = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            RunOptions::from_key_values(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RunOptions::default(),
    };
    let plan = cli.options().over(base).resolve().map_err(|e| e.to_string())?;
    let report = run_convergence_study(&plan.config).map_err(|e| e.to_string())?;
    match &plan.out {
        Some(path) => emit_report(&report, plan.format, path).map_err(|e| e.to_string())?,
        None => print!("{}", render(&report, plan.format)),
    }
    Ok(report.all_converged())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("templap: some levels stopped at the iteration cap");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("templap: {e}");
            ExitCode::from(1)
        }
    }
}
