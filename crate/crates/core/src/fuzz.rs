//! Randomized soundness sweeps over the bound catalog.
//!
//! For each bound, factors are drawn from the generator class matching its
//! hypothesis, the bound is evaluated, and only applicable instances are
//! counted. Attempts are keyed by `(seed, bound id, attempt index)`, so a
//! violation can be replayed from its recorded attempt alone.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{catalog, evaluate, find, Arity, BoundReport, EvalOptions, Hypothesis};
use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::randgen::{derive_seed, generate, stream, GenSpec, MatrixClass};

/// Upper end of the random sector angles drawn when none is fixed.
pub const MAX_RANDOM_ALPHA: f64 = 1.5;

/// Attempts per requested trial before a sweep gives up on drawing more
/// applicable instances.
pub const ATTEMPT_BUDGET: usize = 4;

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    /// Applicable instances wanted per bound.
    pub trials: usize,
    /// Dimensions cycled through by attempt index.
    pub dims: Vec<usize>,
    pub seed: u64,
    /// Fixed sector angle for the sectorial generators; random per factor when absent.
    pub alpha: Option<f64>,
    /// Largest factor count for m-ary bounds; attempts cycle through `2..=max_arity`.
    pub max_arity: usize,
    pub options: EvalOptions,
}

impl FuzzConfig {
    pub fn new(trials: usize, dims: Vec<usize>, seed: u64) -> Self {
        Self { trials, dims, seed, alpha: None, max_arity: 4, options: EvalOptions::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidParameter("dimensions must be non-empty and positive".into()));
        }
        if self.max_arity < 2 {
            return Err(Error::InvalidParameter("max arity must be at least 2".into()));
        }
        if let Some(a) = self.alpha {
            if !(0.0..std::f64::consts::FRAC_PI_2).contains(&a) {
                return Err(Error::InvalidParameter(format!("alpha must lie in [0, pi/2), got {a}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub attempt: usize,
    pub dim: usize,
    pub arity: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzSummary {
    pub bound: String,
    /// Generator classes feeding the factors, for replay.
    pub generator: String,
    pub seed: u64,
    pub requested: usize,
    pub applicable: usize,
    pub skipped: usize,
    pub worst_ratio: Option<f64>,
    pub worst_attempt: Option<usize>,
    pub mean_ratio: Option<f64>,
    pub violations: Vec<Violation>,
}

/// Generator description for a bound's hypothesis.
pub fn generator_for(hypothesis: Hypothesis, alpha: Option<f64>) -> String {
    match hypothesis {
        Hypothesis::General => "general".into(),
        Hypothesis::Commuting => "commuting-pair".into(),
        Hypothesis::NormalCommuting => "normal-commuting-pair".into(),
        Hypothesis::NormalFactor => "normal, general".into(),
        Hypothesis::PsdLeftFactor => "psd, general".into(),
        Hypothesis::AccretiveDissipative => "accretive-dissipative".into(),
        Hypothesis::AccretiveOrDissipative => "accretive | dissipative".into(),
        Hypothesis::Sectorial => match alpha {
            Some(a) => format!("rotated-sectorial({a})"),
            None => format!("rotated-sectorial(U[0, {MAX_RANDOM_ALPHA}))"),
        },
    }
}

/// Draws the factors for one attempt.
pub fn draw_factors(bound_id: &str, config: &FuzzConfig, attempt: usize) -> Result<Vec<ComplexMatrix>> {
    let bound = find(bound_id)?;
    let dim = config.dims[attempt % config.dims.len()];
    let arity = match bound.arity {
        Arity::Binary => 2,
        Arity::Many => 2 + attempt % (config.max_arity - 1),
    };
    let mut rng = stream(config.seed, bound.id, attempt as u64);
    let mut out = Vec::with_capacity(arity);
    let mut j = 0;
    while out.len() < arity {
        let class = match bound.hypothesis {
            Hypothesis::General => MatrixClass::General,
            Hypothesis::Commuting => MatrixClass::CommutingPair,
            Hypothesis::NormalCommuting => MatrixClass::NormalCommutingPair,
            Hypothesis::NormalFactor if j == 0 => MatrixClass::Normal,
            Hypothesis::PsdLeftFactor if j == 0 => MatrixClass::Psd,
            Hypothesis::NormalFactor | Hypothesis::PsdLeftFactor => MatrixClass::General,
            Hypothesis::AccretiveDissipative => MatrixClass::AccretiveDissipative,
            Hypothesis::AccretiveOrDissipative => {
                if rng.random::<bool>() { MatrixClass::Accretive } else { MatrixClass::Dissipative }
            }
            Hypothesis::Sectorial => {
                MatrixClass::RotatedSectorial(config.alpha.unwrap_or_else(|| rng.random_range(0.0..MAX_RANDOM_ALPHA)))
            }
        };
        let scale = 10f64.powf(rng.random_range(-1.0..1.0));
        let seed = derive_seed(config.seed, bound.id, (attempt as u64) << 8 | j as u64);
        let spec = GenSpec::new(class, dim, seed).with_scale(scale);
        out.extend(generate(&spec)?.into_vec());
        j += 1;
    }
    Ok(out)
}

fn run_attempt(bound_id: &str, config: &FuzzConfig, attempt: usize) -> Result<(usize, usize, BoundReport)> {
    let factors = draw_factors(bound_id, config, attempt)?;
    let report = evaluate(bound_id, &factors, &config.options)?;
    Ok((factors[0].n(), factors.len(), report))
}

/// Sweeps one bound until `config.trials` applicable instances have been
/// evaluated (or the attempt budget runs out).
pub fn fuzz_bound(bound_id: &str, config: &FuzzConfig) -> Result<FuzzSummary> {
    config.validate()?;
    let bound = find(bound_id)?;
    let budget = config.trials * ATTEMPT_BUDGET;

    let mut results = Vec::with_capacity(config.trials);
    let mut next = 0;
    let mut skipped = 0;
    while results.len() < config.trials && next < budget {
        let want = config.trials - results.len();
        let batch: Vec<_> = (next..(next + want).min(budget))
            .into_par_iter()
            .map(|a| run_attempt(bound.id, config, a).map(|r| (a, r)))
            .collect::<Result<Vec<_>>>()?;
        next += batch.len();
        for (attempt, (dim, arity, report)) in batch {
            if report.applicable {
                results.push((attempt, dim, arity, report));
            } else {
                skipped += 1;
            }
        }
    }

    let mut worst: Option<(f64, usize)> = None;
    let mut ratio_sum = 0.0;
    let mut ratio_count = 0;
    let mut violations = Vec::new();
    for (attempt, dim, arity, r) in &results {
        if let Some(ratio) = r.ratio {
            ratio_sum += ratio;
            ratio_count += 1;
            if worst.is_none_or(|(w, _)| ratio > w) {
                worst = Some((ratio, *attempt));
            }
        }
        if r.is_violation() {
            violations.push(Violation {
                attempt: *attempt,
                dim: *dim,
                arity: *arity,
                lhs: r.lhs,
                rhs: r.rhs.unwrap_or(f64::NAN),
                ratio: r.ratio,
            });
        }
    }

    Ok(FuzzSummary {
        bound: bound.id.to_string(),
        generator: generator_for(bound.hypothesis, config.alpha),
        seed: config.seed,
        requested: config.trials,
        applicable: results.len(),
        skipped,
        worst_ratio: worst.map(|w| w.0),
        worst_attempt: worst.map(|w| w.1),
        mean_ratio: (ratio_count > 0).then(|| ratio_sum / ratio_count as f64),
        violations,
    })
}

/// [`fuzz_bound`] over the whole catalog, in catalog order.
pub fn fuzz_all(config: &FuzzConfig) -> Result<Vec<FuzzSummary>> {
    catalog().iter().map(|b| fuzz_bound(b.id, config)).collect()
}
