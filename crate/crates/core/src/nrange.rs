//! Numerical range and numerical radius.
//!
//! The numerical range `W(X)` is convex, so it is determined by its support
//! function `h(θ) = λ_max(Re(e^{iθ} X))`. The numerical radius is the maximum
//! of `h` over the circle, and a top eigenvector of `Re(e^{iθ} X)` gives a
//! boundary point of `W(X)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::golden;
use crate::matcore::{hermitian_eig, hermitian_eigvals, ComplexMatrix};
use crate::randgen::{random_unit_vector, stream};

/// Uniform θ samples taken before refinement.
pub const THETA_GRID: usize = 1024;

/// Number of grid brackets refined by golden-section search.
pub const REFINED_BRACKETS: usize = 3;

/// Bracket width at which refinement stops.
pub const REFINE_TOL: f64 = 1e-10;

/// Sampled boundary of a numerical range.
#[derive(Clone, Debug, Serialize)]
pub struct RangeBoundary {
    pub angles: Vec<f64>,
    pub points: Vec<Complex64>,
    /// Unit vectors `v_k` with `points[k] = ⟨X v_k, v_k⟩`.
    #[serde(skip)]
    pub vectors: Vec<Vec<Complex64>>,
}

fn support_operator(x: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    x.rotate(theta).real_part()
}

/// `λ_max(Re(e^{iθ} X))` together with a unit top eigenvector.
pub fn support_value(x: &ComplexMatrix, theta: f64) -> Result<(f64, Vec<Complex64>)> {
    if !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("theta must be finite, got {theta}")));
    }
    let eig = hermitian_eig(&support_operator(x, theta))?;
    Ok((eig.max(), eig.eigenvectors.column(0)))
}

/// Support value without the eigenvector.
pub fn support(x: &ComplexMatrix, theta: f64) -> f64 {
    hermitian_eigvals(&support_operator(x, theta)).expect("real part is Hermitian")[0]
}

/// `ω(X) = max |z|` over `W(X)`.
///
/// Evaluates the support function on a uniform grid of [`THETA_GRID`]
/// angles, then refines the best [`REFINED_BRACKETS`] local maxima with
/// golden-section search.
pub fn numerical_radius(x: &ComplexMatrix) -> f64 {
    if x.frobenius_norm() == 0.0 {
        return 0.0;
    }
    let step = TAU / THETA_GRID as f64;
    let values: Vec<f64> = (0..THETA_GRID).map(|k| support(x, k as f64 * step)).collect();
    let mut best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut peaks: Vec<usize> = (0..THETA_GRID)
        .filter(|&k| {
            let prev = values[(k + THETA_GRID - 1) % THETA_GRID];
            let next = values[(k + 1) % THETA_GRID];
            values[k] >= prev && values[k] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.dedup_by(|a, b| a.abs_diff(*b) <= 1);

    for &k in peaks.iter().take(REFINED_BRACKETS) {
        let centre = k as f64 * step;
        let (_, v) = golden::maximize(|t| support(x, t), centre - step, centre + step, REFINE_TOL);
        best = best.max(v);
    }
    // The support function of a nonzero matrix can dip negative (e.g. a
    // negative multiple of the identity in one direction) but its maximum
    // over the circle never does.
    best.max(0.0)
}

/// `m` boundary points of `W(X)`, one per support angle `θ_k = 2πk/m`.
pub fn range_boundary(x: &ComplexMatrix, m: usize) -> Result<RangeBoundary> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 boundary samples, got {m}")));
    }
    let mut out = RangeBoundary { angles: Vec::with_capacity(m), points: Vec::with_capacity(m), vectors: Vec::with_capacity(m) };
    for k in 0..m {
        let theta = TAU * k as f64 / m as f64;
        let (_, v) = support_value(x, theta)?;
        out.angles.push(theta);
        out.points.push(x.quadratic_form(&v));
        out.vectors.push(v);
    }
    Ok(out)
}

/// Monte-Carlo lower bound for `ω(X)` straight from the definition: the
/// largest `|⟨Xv, v⟩|` over `trials` random unit vectors.
///
/// Trial `k` draws from its own stream keyed by `(seed, k)`, so the result
/// does not depend on how the trials are scheduled.
pub fn radius_lower_bound_sample(x: &ComplexMatrix, trials: usize, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let n = x.n();
    Ok((0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(seed, "radius-oracle", k);
            let v = random_unit_vector(&mut rng, n);
            x.quadratic_form(&v).norm()
        })
        .reduce(|| 0.0, f64::max))
}
