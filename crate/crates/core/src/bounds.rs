//! Catalog of numerical-radius inequalities for products and Hadamard
//! products.
//!
//! Each entry pairs a hypothesis check with an evaluator that reports the
//! left-hand side `ω(product)` and the right-hand side of the inequality for a
//! concrete list of factors. Inapplicable hypotheses are flagged in the
//! report, never raised as errors.
//!
//! Bound ids are a stable public contract.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{hadamard_product, hermitian_eigvals, product, ComplexMatrix};
use crate::nrange::numerical_radius;
use crate::sector::{accretive_sector_index, is_accretive, is_accretive_dissipative, is_dissipative, optimal_rotation};

/// Relative tolerance on `lhs ≤ rhs` before an applicable report counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-7;

/// Default slack on sector-class membership.
pub const DEFAULT_SLACK: f64 = 1e-6;

/// `‖XY − YX‖_F ≤ COMMUTE_TOL · (1 + ‖X‖_F ‖Y‖_F)`.
pub const COMMUTE_TOL: f64 = 1e-10;

/// `‖X*X − XX*‖_F ≤ NORMAL_TOL · (1 + ‖X‖_F²)`.
pub const NORMAL_TOL: f64 = 1e-10;

/// Relative tolerance for the positive semidefinite left factor.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Product,
    Hadamard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arity {
    /// Exactly two factors.
    Binary,
    /// Any number `m ≥ 2` of factors.
    Many,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    General,
    Commuting,
    /// One factor normal, and the factors commute.
    NormalCommuting,
    NormalFactor,
    PsdLeftFactor,
    Sectorial,
    AccretiveDissipative,
    AccretiveOrDissipative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    pub id: &'static str,
    pub kind: Kind,
    pub arity: Arity,
    pub hypothesis: Hypothesis,
    pub constant_form: &'static str,
}

const fn spec(id: &'static str, kind: Kind, arity: Arity, hypothesis: Hypothesis, constant_form: &'static str) -> BoundSpec {
    BoundSpec { id, kind, arity, hypothesis, constant_form }
}

use Arity::*;
use Hypothesis as H;
use Kind::*;

static CATALOG: [BoundSpec; 19] = [
    spec("GEN4", Product, Binary, H::General, "4 w(X) w(Y)"),
    spec("HAD2", Hadamard, Binary, H::General, "2 w(X) w(Y)"),
    spec("COMM2", Product, Binary, H::Commuting, "2 w(X) w(Y)"),
    spec("NORMCOMM1", Product, Binary, H::NormalCommuting, "w(X) w(Y)"),
    spec("NORMHAD", Hadamard, Binary, H::NormalFactor, "w(X) w(Y)"),
    spec("PSDHAD", Hadamard, Binary, H::PsdLeftFactor, "max_j x_jj w(Y)"),
    spec("SECPROD", Product, Binary, H::Sectorial, "sec(a1) sec(a2) w(X) w(Y)"),
    spec("SECPROD-SAME", Product, Binary, H::Sectorial, "sec^2(a) w(X) w(Y), a = max(a1, a2)"),
    spec("ADPROD2", Product, Binary, H::AccretiveDissipative, "2 w(X) w(Y)"),
    spec("ACCPROD", Product, Binary, H::AccretiveOrDissipative, "(1 + a^2) w(X) w(Y)"),
    spec("SECPROD-M", Product, Many, H::Sectorial, "prod_j sec(a_j) w(X_j)"),
    spec("ADPROD-M", Product, Many, H::AccretiveDissipative, "2^(m/2) prod_j w(X_j)"),
    spec("ACCPROD-M", Product, Many, H::AccretiveOrDissipative, "(1 + a^2)^(m/2) prod_j w(X_j)"),
    spec("SECHAD", Hadamard, Binary, H::Sectorial, "sec(a1) sec(a2) w(X) w(Y)"),
    spec("SECHAD-M", Hadamard, Many, H::Sectorial, "prod_j sec(a_j) w(X_j)"),
    spec("ADHAD-M", Hadamard, Many, H::AccretiveDissipative, "2^(m/2) prod_j w(X_j)"),
    spec("ACCHAD-M", Hadamard, Many, H::AccretiveOrDissipative, "(1 + a^2)^(m/2) prod_j w(X_j)"),
    spec("DIAGHAD", Hadamard, Binary, H::Sectorial, "sec(a1) sec(a2) min(max_j |x_jj| w(Y), max_j |y_jj| w(X))"),
    spec("TANHAD", Hadamard, Binary, H::Sectorial, "min((1 + tan a1) w(Re zX) w(Y), (1 + tan a2) w(X) w(Re wY))"),
];

/// Every bound, in stable catalog order.
pub fn catalog() -> &'static [BoundSpec] {
    &CATALOG
}

pub fn find(id: &str) -> Result<&'static BoundSpec> {
    CATALOG.iter().find(|b| b.id == id).ok_or_else(|| Error::UnknownBound(id.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalOptions {
    /// Slack on sector-class membership when explicit angles are supplied.
    pub slack: f64,
    /// Per-factor sector angles overriding the computed indices. Angles below
    /// a factor's own index (but within `slack`) are raised to that index.
    pub alphas: Option<Vec<f64>>,
    /// Multiplier applied to every right-hand side. Anything other than 1
    /// deliberately corrupts the catalog; it exists for negative controls.
    pub rhs_scale: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { slack: DEFAULT_SLACK, alphas: None, rhs_scale: 1.0 }
    }
}

impl EvalOptions {
    fn validate(&self) -> Result<()> {
        if !(self.slack >= 0.0 && self.slack.is_finite()) {
            return Err(Error::InvalidParameter(format!("slack must be non-negative, got {}", self.slack)));
        }
        if !(self.rhs_scale > 0.0 && self.rhs_scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("rhs scale must be positive, got {}", self.rhs_scale)));
        }
        if let Some(alphas) = &self.alphas {
            if let Some(a) = alphas.iter().find(|a| !(0.0..PI / 2.0).contains(*a)) {
                return Err(Error::InvalidParameter(format!("alpha must lie in [0, pi/2), got {a}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub id: String,
    pub applicable: bool,
    pub lhs: f64,
    /// Absent when the constant is undefined for these factors (e.g. a
    /// sector angle of a non-sectorial matrix).
    pub rhs: Option<f64>,
    pub ratio: Option<f64>,
    pub slack: Option<f64>,
    pub details: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    /// Applicable and `lhs > rhs · (1 + VIOLATION_TOL)`.
    pub fn is_violation(&self) -> bool {
        self.applicable && self.rhs.is_some_and(|rhs| self.lhs > rhs * (1.0 + VIOLATION_TOL))
    }
}

struct Draft {
    applicable: bool,
    details: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl Draft {
    fn new() -> Self {
        Self { applicable: true, details: BTreeMap::new(), notes: Vec::new() }
    }

    fn put(&mut self, key: impl Into<String>, value: f64) {
        self.details.insert(key.into(), value);
    }
}

/// Per-factor sector data: effective angle and optimal rotation scalar.
struct SectorData {
    alpha: f64,
    z: Complex64,
}

fn sector_data(factors: &[ComplexMatrix], options: &EvalOptions, draft: &mut Draft) -> Result<Option<Vec<SectorData>>> {
    if let Some(alphas) = &options.alphas {
        if alphas.len() != factors.len() {
            return Err(Error::InvalidParameter(format!(
                "{} sector angles supplied for {} factors",
                alphas.len(),
                factors.len()
            )));
        }
    }
    let mut out = Vec::with_capacity(factors.len());
    for (j, x) in factors.iter().enumerate() {
        let label = j + 1;
        let Ok(class) = optimal_rotation(x) else {
            draft.notes.push(format!("factor {label} is the zero matrix"));
            return Ok(None);
        };
        let (Some(index), Some(z)) = (class.index, class.rotation_scalar()) else {
            draft.notes.push(format!("factor {label} is not sectorial"));
            return Ok(None);
        };
        draft.put(format!("index_{label}"), index);
        let alpha = match options.alphas.as_ref().map(|a| a[j]) {
            None => index,
            Some(requested) if index <= requested => requested,
            Some(requested) if index <= requested + options.slack => {
                draft.notes.push(format!("factor {label}: requested angle {requested} raised to index {index}"));
                index
            }
            Some(requested) => {
                draft.notes.push(format!("factor {label}: index {index} exceeds requested angle {requested}"));
                return Ok(None);
            }
        };
        draft.put(format!("alpha_{label}"), alpha);
        out.push(SectorData { alpha, z });
    }
    Ok(Some(out))
}

/// `a = max_j tan α_j`, where `α_j` is the accretive index of `X_j`, or of
/// `-i X_j` for a dissipative factor.
fn accretive_slope(factors: &[ComplexMatrix], draft: &mut Draft) -> Option<f64> {
    let minus_i = Complex64::new(0.0, -1.0);
    let mut a: f64 = 0.0;
    for (j, x) in factors.iter().enumerate() {
        let label = j + 1;
        let index = if is_accretive(x) {
            accretive_sector_index(x)
        } else if is_dissipative(x) {
            accretive_sector_index(&x.scale(minus_i))
        } else {
            draft.notes.push(format!("factor {label} is neither accretive nor dissipative"));
            return None;
        };
        let Ok(index) = index else {
            draft.notes.push(format!("factor {label} has a numerically singular real part"));
            return None;
        };
        draft.put(format!("alpha_{label}"), index);
        a = a.max(index.tan());
    }
    draft.put("a", a);
    Some(a)
}

fn is_normal(x: &ComplexMatrix) -> (bool, f64) {
    let defect = x.normality_defect();
    let norm = x.frobenius_norm();
    (defect <= NORMAL_TOL * (1.0 + norm * norm), defect)
}

fn commute(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<(bool, f64)> {
    let c = x.commutator(y)?.frobenius_norm();
    Ok((c <= COMMUTE_TOL * (1.0 + x.frobenius_norm() * y.frobenius_norm()), c))
}

fn is_psd(x: &ComplexMatrix) -> (bool, f64) {
    let scale = 1.0 + x.frobenius_norm();
    if !x.is_hermitian(PSD_TOL * scale) {
        return (false, f64::NAN);
    }
    let min = *hermitian_eigvals(x).expect("checked Hermitian").last().expect("non-empty");
    (min >= -PSD_TOL * scale, min)
}

fn max_abs_diag(x: &ComplexMatrix) -> f64 {
    x.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn sec(alpha: f64) -> f64 {
    1.0 / alpha.cos()
}

/// Evaluates one catalog bound on the given factors.
pub fn evaluate(id: &str, factors: &[ComplexMatrix], options: &EvalOptions) -> Result<BoundReport> {
    let bound = find(id)?;
    options.validate()?;
    match bound.arity {
        Binary if factors.len() != 2 => {
            return Err(Error::InvalidParameter(format!("{id} takes exactly 2 factors, got {}", factors.len())))
        }
        Many if factors.len() < 2 => {
            return Err(Error::InvalidParameter(format!("{id} takes at least 2 factors, got {}", factors.len())))
        }
        _ => {}
    }

    let combined = match bound.kind {
        Product => product(factors)?,
        Hadamard => hadamard_product(factors)?,
    };
    let lhs = numerical_radius(&combined);
    let omegas: Vec<f64> = factors.iter().map(numerical_radius).collect();
    let omega_prod: f64 = omegas.iter().product();
    let m = factors.len() as i32;

    let mut d = Draft::new();
    for (j, w) in omegas.iter().enumerate() {
        d.put(format!("omega_{}", j + 1), *w);
    }

    match bound.hypothesis {
        H::General => {}
        H::Commuting => {
            let (ok, c) = commute(&factors[0], &factors[1])?;
            d.put("commutator", c);
            d.applicable = ok;
        }
        H::NormalCommuting | H::NormalFactor => {
            let (nx, dx) = is_normal(&factors[0]);
            let (ny, dy) = is_normal(&factors[1]);
            d.put("normality_defect_1", dx);
            d.put("normality_defect_2", dy);
            d.applicable = nx || ny;
            if bound.hypothesis == H::NormalCommuting {
                let (ok, c) = commute(&factors[0], &factors[1])?;
                d.put("commutator", c);
                d.applicable &= ok;
            }
        }
        H::PsdLeftFactor => {
            let (ok, min) = is_psd(&factors[0]);
            d.put("min_eigenvalue_1", min);
            d.applicable = ok;
        }
        H::AccretiveDissipative => {
            d.applicable = factors.iter().all(is_accretive_dissipative);
        }
        H::Sectorial | H::AccretiveOrDissipative => {}
    }

    let constant = match bound.id {
        "GEN4" => Some(4.0 * omega_prod),
        "HAD2" | "COMM2" | "ADPROD2" => Some(2.0 * omega_prod),
        "NORMCOMM1" | "NORMHAD" => Some(omega_prod),
        "PSDHAD" => {
            let max_diag = factors[0].diagonal().iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
            d.put("max_diag_1", max_diag);
            Some(max_diag * omegas[1])
        }
        "ADPROD-M" | "ADHAD-M" => Some(2f64.powf(m as f64 / 2.0) * omega_prod),
        "ACCPROD" | "ACCPROD-M" | "ACCHAD-M" => match accretive_slope(factors, &mut d) {
            Some(a) => Some((1.0 + a * a).powf(m as f64 / 2.0) * omega_prod),
            None => {
                d.applicable = false;
                None
            }
        },
        _ => match sector_data(factors, options, &mut d)? {
            None => {
                d.applicable = false;
                None
            }
            Some(sd) => Some(sectorial_rhs(bound.id, factors, &omegas, &sd, &mut d)),
        },
    };

    let rhs = constant.map(|r| r * options.rhs_scale);
    if options.rhs_scale != 1.0 {
        d.notes.push(format!("right-hand side scaled by {}", options.rhs_scale));
    }
    let ratio = rhs.filter(|&r| r > 0.0).map(|r| lhs / r);
    Ok(BoundReport {
        id: bound.id.to_string(),
        applicable: d.applicable,
        lhs,
        rhs,
        ratio,
        slack: rhs.map(|r| r - lhs),
        details: d.details,
        notes: d.notes,
    })
}

fn sectorial_rhs(id: &str, factors: &[ComplexMatrix], omegas: &[f64], sd: &[SectorData], d: &mut Draft) -> f64 {
    let sec_prod: f64 = sd.iter().map(|s| sec(s.alpha)).product();
    let omega_prod: f64 = omegas.iter().product();
    match id {
        "SECPROD" | "SECPROD-M" | "SECHAD" | "SECHAD-M" => {
            if id == "SECHAD" {
                d.notes.push("constant read as sec(a1) sec(a2)".into());
            }
            if id == "SECHAD-M" {
                d.notes.push("hypothesis read as X_j in M(a_j) for each j".into());
            }
            sec_prod * omega_prod
        }
        "SECPROD-SAME" => {
            let alpha = sd[0].alpha.max(sd[1].alpha);
            d.put("alpha", alpha);
            sec(alpha).powi(2) * omega_prod
        }
        "DIAGHAD" => {
            let dx = max_abs_diag(&factors[0]);
            let dy = max_abs_diag(&factors[1]);
            d.put("max_abs_diag_1", dx);
            d.put("max_abs_diag_2", dy);
            sec_prod * (dx * omegas[1]).min(dy * omegas[0])
        }
        "TANHAD" => {
            let re_x = numerical_radius(&factors[0].scale(sd[0].z).real_part());
            let re_y = numerical_radius(&factors[1].scale(sd[1].z).real_part());
            d.put("omega_re_1", re_x);
            d.put("omega_re_2", re_y);
            let alpha = sd[0].alpha.max(sd[1].alpha);
            d.put("alpha", alpha);
            d.put("rhs_uniform", (1.0 + alpha.tan()) * omega_prod);
            d.notes.push("real parts taken at each factor's optimal rotation".into());
            ((1.0 + sd[0].alpha.tan()) * re_x * omegas[1]).min((1.0 + sd[1].alpha.tan()) * omegas[0] * re_y)
        }
        other => unreachable!("{other} is not a sectorial bound"),
    }
}

/// Evaluates every bound whose arity fits: binary bounds see the first two
/// factors, m-ary bounds see all of them. Sorted by id.
pub fn verify_all(factors: &[ComplexMatrix], options: &EvalOptions) -> Result<Vec<BoundReport>> {
    if factors.len() < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 factors, got {}", factors.len())));
    }
    let mut reports = CATALOG
        .par_iter()
        .map(|b| {
            let fs = match b.arity {
                Binary => &factors[..2],
                Many => factors,
            };
            evaluate(b.id, fs, options)
        })
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}
