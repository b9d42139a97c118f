//! CSV and markdown tables of a [`ConvergenceReport`].
//!
//! Columns: `J, M, L2_err, L2_rate, Linf_err, Linf_rate, iters, seconds`.
//! Errors and times use 5 significant digits in scientific notation, rates 2
//! decimals, and a missing rate prints as `--`.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::study::{ConvergenceReport, LevelResult};
use crate::error::{Error, Result};

pub const COLUMNS: [&str; 8] = ["J", "M", "L2_err", "L2_rate", "Linf_err", "Linf_rate", "iters", "seconds"];

/// Marker for a rate that is not defined.
pub const ABSENT: &str = "--";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::Parse(format!("unknown format {other:?}; expected csv or markdown"))),
        }
    }
}

/// `8.5343e-07` style: 5 significant digits, signed two-digit exponent.
pub fn format_sci(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.4e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn format_rate(r: Option<f64>) -> String {
    r.map_or_else(|| ABSENT.to_string(), |r| format!("{r:.2}"))
}

fn cells(level: &LevelResult) -> [String; 8] {
    [
        level.j.to_string(),
        level.m.to_string(),
        format_sci(level.l2_error),
        format_rate(level.l2_rate),
        format_sci(level.linf_error),
        format_rate(level.linf_rate),
        level.iterations.to_string(),
        format_sci(level.wall_time),
    ]
}

pub fn render(report: &ConvergenceReport, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(&COLUMNS.join(","));
            out.push('\n');
            for level in &report.levels {
                out.push_str(&cells(level).join(","));
                out.push('\n');
            }
        }
        ReportFormat::Markdown => {
            out.push_str(&format!("| {} |\n", COLUMNS.join(" | ")));
            out.push_str(&format!("|{}\n", "---:|".repeat(COLUMNS.len())));
            for level in &report.levels {
                out.push_str(&format!("| {} |\n", cells(level).join(" | ")));
            }
        }
    }
    out
}

pub fn emit_report(report: &ConvergenceReport, format: ReportFormat, path: &Path) -> Result<()> {
    fs::write(path, render(report, format))?;
    Ok(())
}

/// One parsed CSV row, holding values at the printed precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub j: u32,
    pub m: usize,
    pub l2_error: f64,
    pub l2_rate: Option<f64>,
    pub linf_error: f64,
    pub linf_rate: Option<f64>,
    pub iterations: usize,
    pub seconds: f64,
}

impl ReportRow {
    /// The row `level` would print as.
    pub fn rounded(level: &LevelResult) -> Self {
        let round_sci = |v: f64| format_sci(v).parse::<f64>().expect("formatted float");
        let round_rate = |r: Option<f64>| r.map(|r| format!("{r:.2}").parse::<f64>().expect("formatted float"));
        Self {
            j: level.j,
            m: level.m,
            l2_error: round_sci(level.l2_error),
            l2_rate: round_rate(level.l2_rate),
            linf_error: round_sci(level.linf_error),
            linf_rate: round_rate(level.linf_rate),
            iterations: level.iterations,
            seconds: round_sci(level.wall_time),
        }
    }
}

fn field<T: FromStr>(raw: &str, line: usize, name: &str) -> Result<T> {
    raw.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad {name} value {raw:?}")))
}

fn optional(raw: &str, line: usize, name: &str) -> Result<Option<f64>> {
    if raw.trim() == ABSENT {
        Ok(None)
    } else {
        field(raw, line, name).map(Some)
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<ReportRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == COLUMNS.join(",") => {}
        _ => return Err(Error::Parse("missing or unexpected CSV header".into())),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            let line = n + 1;
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != COLUMNS.len() {
                return Err(Error::Parse(format!("line {line}: expected {} fields", COLUMNS.len())));
            }
            Ok(ReportRow {
                j: field(f[0], line, "J")?,
                m: field(f[1], line, "M")?,
                l2_error: field(f[2], line, "L2_err")?,
                l2_rate: optional(f[3], line, "L2_rate")?,
                linf_error: field(f[4], line, "Linf_err")?,
                linf_rate: optional(f[5], line, "Linf_rate")?,
                iterations: field(f[6], line, "iters")?,
                seconds: field(f[7], line, "seconds")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(j: u32, rate: Option<f64>) -> LevelResult {
        LevelResult {
            j,
            m: (1 << j) - 1,
            h: 1.0 / (1 << j) as f64,
            l2_error: 8.534_312e-7,
            linf_error: 1.047_449e-5,
            l2_rate: rate,
            linf_rate: rate,
            iterations: 11,
            wall_time: 0.012_345_67,
            converged: true,
        }
    }

    #[test]
    fn sci_format() {
        assert_eq!(format_sci(8.534_312e-7), "8.5343e-07");
        assert_eq!(format_sci(12.0), "1.2000e+01");
        assert_eq!(format_sci(0.0), "0.0000e+00");
    }

    #[test]
    fn empty_report_is_header_only() {
        let report = ConvergenceReport { levels: vec![], log_corrected: false };
        assert_eq!(render(&report, ReportFormat::Csv), format!("{}\n", COLUMNS.join(",")));
    }

    #[test]
    fn single_level_has_absent_rates() {
        let report = ConvergenceReport { levels: vec![level(12, None)], log_corrected: false };
        let csv = render(&report, ReportFormat::Csv);
        assert_eq!(csv.lines().nth(1).unwrap(), "12,4095,8.5343e-07,--,1.0474e-05,--,11,1.2346e-02");
        assert!(render(&report, ReportFormat::Markdown).contains("| -- |"));
    }

    #[test]
    fn csv_round_trip() {
        let report = ConvergenceReport {
            levels: vec![level(12, None), level(13, Some(1.996_7))],
            log_corrected: false,
        };
        let rows = parse_csv(&render(&report, ReportFormat::Csv)).unwrap();
        let expected: Vec<ReportRow> = report.levels.iter().map(ReportRow::rounded).collect();
        assert_eq!(rows, expected);
    }
}
