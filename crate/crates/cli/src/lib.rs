//! Command implementations behind the `numrad` binary.
//!
//! Every command produces a [`RunReport`], a single JSON document written to
//! standard output. Exit codes: 0 when every check passes, 1 when an
//! inequality violation was found, 2 for input or usage errors.

pub mod matrix_file;

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use numrad::bounds::{self, BoundReport, EvalOptions, DEFAULT_SLACK};
use numrad::fuzz::{fuzz_all, fuzz_bound, FuzzConfig};
use numrad::{operator_norm, optimal_rotation, range_boundary, ComplexMatrix, GenSpec, MatrixClass};
use serde::Serialize;
use serde_json::{json, Value};

use crate::matrix_file::{read_matrix, write_matrix};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Tolerance on the `‖X‖/2 ≤ ω(X) ≤ ‖X‖` bracket reported by `radius`.
pub const BRACKET_TOL: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl From<numrad::Error> for CliError {
    fn from(e: numrad::Error) -> Self {
        match e {
            numrad::Error::UnknownBound(_) | numrad::Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub violations: Vec<Value>,
    pub version: &'static str,
}

impl RunReport {
    fn new(command: &str, inputs: Value) -> Self {
        Self { command: command.into(), inputs, outputs: Value::Null, violations: Vec::new(), version: VERSION }
    }

    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn cmd_classify(path: &Path) -> Result<RunReport, CliError> {
    let x = read_matrix(path)?;
    let class = optimal_rotation(&x)?;
    let mut report = RunReport::new("classify", json!({ "path": path_str(path) }));
    report.outputs = json!({
        "n": x.n(),
        "classification": class,
        "index_degrees": class.index.map(f64::to_degrees),
    });
    Ok(report)
}

pub fn cmd_radius(path: &Path) -> Result<RunReport, CliError> {
    let x = read_matrix(path)?;
    let omega = numrad::numerical_radius(&x);
    let norm = operator_norm(&x);
    let holds = norm / 2.0 - BRACKET_TOL <= omega && omega <= norm + BRACKET_TOL;
    let mut report = RunReport::new("radius", json!({ "path": path_str(path) }));
    report.outputs = json!({
        "n": x.n(),
        "numerical_radius": omega,
        "operator_norm": norm,
        "bracket": { "lower": norm / 2.0, "upper": norm, "holds": holds },
    });
    if !holds {
        report.violations.push(json!({ "check": "norm-bracket", "numerical_radius": omega, "operator_norm": norm }));
    }
    Ok(report)
}

/// Boundary samples as `theta,re,im` lines.
pub fn boundary_csv(x: &ComplexMatrix, samples: usize) -> Result<String, CliError> {
    let b = range_boundary(x, samples)?;
    let mut out = String::new();
    for (theta, p) in b.angles.iter().zip(&b.points) {
        writeln!(out, "{theta},{},{}", p.re, p.im).expect("writing to a string");
    }
    Ok(out)
}

pub fn cmd_range(path: &Path, samples: usize, out: Option<&Path>) -> Result<RunReport, CliError> {
    let x = read_matrix(path)?;
    let csv = boundary_csv(&x, samples)?;
    let mut report = RunReport::new(
        "range",
        json!({ "path": path_str(path), "samples": samples, "out": out.map(path_str) }),
    );
    report.outputs = match out {
        Some(dest) => {
            fs::write(dest, &csv).map_err(|e| CliError::Input(format!("{}: {e}", dest.display())))?;
            json!({ "rows": samples, "written_to": path_str(dest) })
        }
        None => json!({ "rows": samples, "csv": csv }),
    };
    Ok(report)
}

fn violation_entry(r: &BoundReport) -> Value {
    json!({ "bound": r.id, "lhs": r.lhs, "rhs": r.rhs, "ratio": r.ratio })
}

#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub bound: String,
    pub paths: Vec<PathBuf>,
    pub slack: f64,
    pub alphas: Option<Vec<f64>>,
    pub rhs_scale: f64,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let factors = args.paths.iter().map(|p| read_matrix(p)).collect::<Result<Vec<_>, _>>()?;
    let options = EvalOptions { slack: args.slack, alphas: args.alphas.clone(), rhs_scale: args.rhs_scale };
    let reports = if args.bound == "all" {
        bounds::verify_all(&factors, &options)?
    } else {
        vec![bounds::evaluate(&args.bound, &factors, &options)?]
    };
    let mut report = RunReport::new(
        "verify",
        json!({
            "bound": args.bound,
            "paths": args.paths.iter().map(|p| path_str(p)).collect::<Vec<_>>(),
            "slack": args.slack,
            "alphas": args.alphas,
            "rhs_scale": args.rhs_scale,
        }),
    );
    report.violations = reports.iter().filter(|r| r.is_violation()).map(violation_entry).collect();
    report.outputs = json!({ "reports": reports });
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct FuzzArgs {
    pub bound: String,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub alpha: Option<f64>,
    pub max_arity: usize,
    pub slack: f64,
    pub rhs_scale: f64,
}

impl Default for FuzzArgs {
    fn default() -> Self {
        Self {
            bound: "all".into(),
            trials: 100,
            dims: vec![3],
            seed: 0,
            alpha: None,
            max_arity: 4,
            slack: DEFAULT_SLACK,
            rhs_scale: 1.0,
        }
    }
}

pub fn cmd_fuzz(args: &FuzzArgs) -> Result<RunReport, CliError> {
    let mut config = FuzzConfig::new(args.trials, args.dims.clone(), args.seed);
    config.alpha = args.alpha;
    config.max_arity = args.max_arity;
    config.options = EvalOptions { slack: args.slack, alphas: None, rhs_scale: args.rhs_scale };
    let summaries = if args.bound == "all" { fuzz_all(&config)? } else { vec![fuzz_bound(&args.bound, &config)?] };

    let mut report = RunReport::new(
        "fuzz",
        json!({
            "bound": args.bound,
            "trials": args.trials,
            "dims": args.dims,
            "seed": args.seed,
            "alpha": args.alpha,
            "max_arity": args.max_arity,
            "slack": args.slack,
            "rhs_scale": args.rhs_scale,
        }),
    );
    for s in &summaries {
        for v in &s.violations {
            report.violations.push(json!({ "bound": s.bound, "generator": s.generator, "violation": v }));
        }
    }
    report.outputs = json!({ "summaries": summaries });
    Ok(report)
}

/// Parses a generator class name as accepted by `generate --class`.
pub fn parse_class(name: &str, alpha: Option<f64>) -> Result<MatrixClass, CliError> {
    let need_alpha = || alpha.ok_or_else(|| CliError::Usage(format!("class `{name}` needs --alpha")));
    Ok(match name {
        "general" => MatrixClass::General,
        "hermitian" => MatrixClass::Hermitian,
        "psd" => MatrixClass::Psd,
        "pd" => MatrixClass::Pd,
        "normal" => MatrixClass::Normal,
        "commuting-pair" => MatrixClass::CommutingPair,
        "normal-commuting-pair" => MatrixClass::NormalCommutingPair,
        "accretive" => MatrixClass::Accretive,
        "dissipative" => MatrixClass::Dissipative,
        "accretive-dissipative" => MatrixClass::AccretiveDissipative,
        "sectorial-with-index" => MatrixClass::SectorialWithIndex(need_alpha()?),
        "rotated-sectorial" => MatrixClass::RotatedSectorial(need_alpha()?),
        other => return Err(CliError::Usage(format!("unknown class `{other}`"))),
    })
}

/// Writes generated matrices to `out` (pair classes append `.2` before the
/// extension for the second matrix).
pub fn cmd_generate(class: &str, dim: usize, seed: u64, alpha: Option<f64>, scale: f64, out: &Path) -> Result<RunReport, CliError> {
    if let Some(a) = alpha {
        if !(0.0..FRAC_PI_2).contains(&a) {
            return Err(CliError::Usage(format!("alpha must lie in [0, pi/2), got {a}")));
        }
    }
    let spec = GenSpec::new(parse_class(class, alpha)?, dim, seed).with_scale(scale);
    let mats = numrad::generate(&spec)?.into_vec();
    let mut written = Vec::new();
    for (k, m) in mats.iter().enumerate() {
        let dest = if k == 0 { out.to_path_buf() } else { second_path(out) };
        write_matrix(&dest, m)?;
        written.push(path_str(&dest));
    }
    let mut report = RunReport::new("generate", json!({ "spec": spec, "out": path_str(out) }));
    report.outputs = json!({ "written": written });
    Ok(report)
}

fn second_path(p: &Path) -> PathBuf {
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match p.extension() {
        Some(ext) => format!("{stem}.2.{}", ext.to_string_lossy()),
        None => format!("{stem}.2"),
    };
    p.with_file_name(name)
}
