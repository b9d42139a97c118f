//! Model problems, error norms, convergence studies and their reports.

pub mod config;
pub mod problems;
pub mod report;
pub mod study;

pub use config::{RunOptions, RunPlan};
pub use problems::{example1_f, example2_setup, example3_exact, Example1, Example2, Example3, Problem};
pub use report::{emit_report, parse_csv, render, ReportFormat};
pub use study::{
    compute_rates, error_norms, restrict_to_coarse, run_convergence_study, solve_system, ConvergenceReport,
    ExampleId, ExperimentConfig, LevelResult, SolverKind,
};
