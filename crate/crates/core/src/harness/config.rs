//! Run options shared by the command line and `key = value` config files.
//!
//! ```text
//! # comments start with '#'
//! example = 1
//! beta = 0.5
//! lambda = 0.5
//! scheme = 1,1
//! levels = 10..13
//! solver = pcg-tchan
//! ```
//!
//! Keys: `example`, `beta`, `lambda`, `scheme`, `levels`, `solver`, `tol`,
//! `band`, `max-iter`, `no-cbeta`, `radius`, `out`, `format`.

use std::path::PathBuf;

use super::report::ReportFormat;
use super::study::{ExampleId, ExperimentConfig, SolverKind};
use crate::error::{Error, Result};
use crate::params::SchemeParams;

/// Every setting optional so that sources can be layered.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub example: Option<u8>,
    pub beta: Option<f64>,
    pub lambda: Option<f64>,
    pub scheme: Option<(u8, u8)>,
    pub levels: Option<Vec<u32>>,
    pub solver: Option<SolverKind>,
    pub tol: Option<f64>,
    pub band: Option<usize>,
    pub max_iter: Option<usize>,
    pub no_cbeta: Option<bool>,
    pub radius: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<ReportFormat>,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunPlan {
    pub config: ExperimentConfig,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
}

/// `"S,S1"`.
pub fn parse_scheme(s: &str) -> Result<(u8, u8)> {
    let bad = || Error::Parse(format!("scheme {s:?} must look like S,S1 with S, S1 in {{0, 1}}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let parse = |x: &str| match x.trim() {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(bad()),
    };
    Ok((parse(a)?, parse(b)?))
}

/// `"J1..J2"` (inclusive) or a comma-separated list.
pub fn parse_levels(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("levels {s:?} must look like 10..13 or 10,11,12"));
    let num = |x: &str| x.trim().parse::<u32>().map_err(|_| bad());
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        s.split(',').map(num).collect()
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(Error::Parse(format!("{key}: expected true or false, got {other:?}"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{key}: cannot parse {:?}", v.trim())))
}

impl RunOptions {
    /// Parse `key = value` lines. Unknown keys and repeated keys are errors.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut o = RunOptions::default();
        let mut seen = std::collections::HashSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", n + 1)))?;
            let key = key.trim().replace('_', "-");
            if !seen.insert(key.clone()) {
                return Err(Error::Parse(format!("line {}: {key} given twice", n + 1)));
            }
            let v = value.trim();
            match key.as_str() {
                "example" => o.example = Some(parse_num(&key, v)?),
                "beta" => o.beta = Some(parse_num(&key, v)?),
                "lambda" => o.lambda = Some(parse_num(&key, v)?),
                "scheme" => o.scheme = Some(parse_scheme(v)?),
                "levels" => o.levels = Some(parse_levels(v)?),
                "solver" => o.solver = Some(v.parse()?),
                "tol" => o.tol = Some(parse_num(&key, v)?),
                "band" => o.band = Some(parse_num(&key, v)?),
                "max-iter" => o.max_iter = Some(parse_num(&key, v)?),
                "no-cbeta" => o.no_cbeta = Some(parse_bool(&key, v)?),
                "radius" => o.radius = Some(parse_num(&key, v)?),
                "out" => o.out = Some(PathBuf::from(v)),
                "format" => o.format = Some(v.parse()?),
                other => return Err(Error::Parse(format!("line {}: unknown key {other:?}", n + 1))),
            }
        }
        Ok(o)
    }

    /// Settings from `self`, falling back to `base` where unset.
    pub fn over(self, base: RunOptions) -> RunOptions {
        RunOptions {
            example: self.example.or(base.example),
            beta: self.beta.or(base.beta),
            lambda: self.lambda.or(base.lambda),
            scheme: self.scheme.or(base.scheme),
            levels: self.levels.or(base.levels),
            solver: self.solver.or(base.solver),
            tol: self.tol.or(base.tol),
            band: self.band.or(base.band),
            max_iter: self.max_iter.or(base.max_iter),
            no_cbeta: self.no_cbeta.or(base.no_cbeta),
            radius: self.radius.or(base.radius),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }

    pub fn resolve(self) -> Result<RunPlan> {
        let missing = |k: &str| Error::InvalidParameter(format!("missing required setting {k}"));
        let example = match self.example.ok_or_else(|| missing("example"))? {
            1 => ExampleId::One,
            2 => ExampleId::Two,
            3 => ExampleId::Three {
                radius: self.radius.unwrap_or(1.0),
            },
            n => return Err(Error::InvalidParameter(format!("example must be 1, 2 or 3, got {n}"))),
        };
        if self.radius.is_some() && example.number() != 3 {
            return Err(Error::InvalidParameter("radius applies to example 3 only".into()));
        }
        let beta = self.beta.ok_or_else(|| missing("beta"))?;
        let lambda = self.lambda.ok_or_else(|| missing("lambda"))?;
        let (s, s1) = self.scheme.ok_or_else(|| missing("scheme"))?;
        let params = SchemeParams::new(beta, lambda, s, s1)?.with_cbeta(!self.no_cbeta.unwrap_or(false));
        let mut config = ExperimentConfig::new(example, params, self.levels.ok_or_else(|| missing("levels"))?);
        if let Some(solver) = self.solver {
            config.solver = solver;
        }
        if let Some(tol) = self.tol {
            config.tol = tol;
        }
        if let Some(band) = self.band {
            config.band = band;
        }
        config.max_iter = self.max_iter;
        config.validate()?;
        Ok(RunPlan {
            config,
            out: self.out,
            format: self.format.unwrap_or(ReportFormat::Markdown),
        })
    }
}
