//! Accretive, dissipative and sectorial matrices.
//!
//! `X` is sectorial when some rotation `e^{iφ} X` has its numerical range in
//! the wedge `S_α = {z : Re z > 0, |Im z| ≤ tan(α) Re z}`; the smallest such
//! `α` is the sector index.
//!
//! For an accretive `X = A + iB` the Rayleigh quotients `⟨Bv,v⟩ / ⟨Av,v⟩`
//! sweep exactly the spectral interval of `M = A^{-1/2} B A^{-1/2}`, so the
//! arguments of the points of `W(X)` fill `[atan λ_min(M), atan λ_max(M)]`.
//! Once one feasible rotation is known, the optimal one centres that
//! interval on the positive real axis.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, hermitian_eigvals, operator_norm, ComplexMatrix};

/// Relative tolerance for positive definiteness of cartesian parts.
pub const PD_TOL: f64 = 1e-10;

/// Number of rotation angles scanned for feasibility.
pub const ROTATION_GRID: usize = 720;

/// Relative floor below which `Re X` counts as numerically singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Tolerance on the smallest eigenvalue of the block certificate.
pub const CERTIFICATE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectorClassification {
    pub accretive: bool,
    pub dissipative: bool,
    pub accretive_dissipative: bool,
    pub sectorial: bool,
    /// `φ*` in `[0, 2π)`, with `z = e^{iφ*}` the optimal rotation.
    pub rotation: Option<f64>,
    /// `α*` in `[0, π/2)`, radians.
    pub index: Option<f64>,
}

impl SectorClassification {
    /// The unimodular scalar `z = e^{iφ*}`, when sectorial.
    pub fn rotation_scalar(&self) -> Option<Complex64> {
        self.rotation.map(|phi| Complex64::from_polar(1.0, phi))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsdCertificate {
    pub alpha: f64,
    pub min_eigenvalue: f64,
    pub holds: bool,
}

/// `λ_min(H) > tol · (1 + ‖H‖_F)`.
pub fn is_positive_definite(h: &ComplexMatrix, tol: f64) -> Result<bool> {
    let eigs = hermitian_eigvals(h)?;
    Ok(*eigs.last().expect("non-empty") > tol * (1.0 + h.frobenius_norm()))
}

fn pd(h: &ComplexMatrix) -> bool {
    is_positive_definite(h, PD_TOL).expect("cartesian parts are Hermitian")
}

/// `Re X > 0`.
pub fn is_accretive(x: &ComplexMatrix) -> bool {
    pd(&x.real_part())
}

/// `Im X > 0`.
pub fn is_dissipative(x: &ComplexMatrix) -> bool {
    pd(&x.imag_part())
}

pub fn is_accretive_dissipative(x: &ComplexMatrix) -> bool {
    is_accretive(x) && is_dissipative(x)
}

/// Spectral interval `[λ_min, λ_max]` of `A^{-1/2} B A^{-1/2}` for `X = A + iB`
/// with `A` positive definite.
pub fn slope_interval(x: &ComplexMatrix) -> Result<(f64, f64)> {
    let re = x.real_part();
    let eig = hermitian_eig(&re)?;
    if eig.min() <= SINGULAR_TOL * eig.max().abs() || eig.min() <= 0.0 {
        return Err(Error::NotAccretive);
    }
    let inv_root = eig.map(|l| 1.0 / l.sqrt());
    let m = &(&inv_root * &x.imag_part()) * &inv_root;
    let vals = hermitian_eigvals(&m)?;
    Ok((vals[vals.len() - 1], vals[0]))
}

/// Sector index of an accretive matrix at rotation 0:
/// `arctan ‖(Re X)^{-1/2} (Im X) (Re X)^{-1/2}‖`.
pub fn accretive_sector_index(x: &ComplexMatrix) -> Result<f64> {
    if !is_accretive(x) {
        return Err(Error::NotAccretive);
    }
    let (lo, hi) = slope_interval(x)?;
    Ok(lo.abs().max(hi.abs()).atan())
}

fn wrap_angle(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    if w >= TAU { 0.0 } else { w }
}

fn min_real_eig(x: &ComplexMatrix, phi: f64) -> f64 {
    *hermitian_eigvals(&x.rotate(phi).real_part()).expect("real part is Hermitian").last().expect("non-empty")
}

/// Finds the rotation `e^{iφ*}` that minimizes the sector index of
/// `e^{iφ*} X`, together with the cartesian-class flags.
///
/// Feasible rotations (`Re(e^{iφ} X) > 0`) are located on a grid of
/// [`ROTATION_GRID`] angles; from the most strongly feasible one the optimum
/// follows in closed form by centring the argument interval of `W`.
pub fn optimal_rotation(x: &ComplexMatrix) -> Result<SectorClassification> {
    let norm = x.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::Degenerate("zero matrix has W = {0}; sector membership is undefined"));
    }
    let accretive = is_accretive(x);
    let dissipative = is_dissipative(x);
    let mut out = SectorClassification {
        accretive,
        dissipative,
        accretive_dissipative: accretive && dissipative,
        sectorial: false,
        rotation: None,
        index: None,
    };

    let threshold = PD_TOL * (1.0 + norm);
    let mut anchor: Option<(f64, f64)> = None;
    for k in 0..ROTATION_GRID {
        let phi = TAU * k as f64 / ROTATION_GRID as f64;
        let lam = min_real_eig(x, phi);
        if lam > threshold && anchor.is_none_or(|(_, best)| lam > best) {
            anchor = Some((phi, lam));
        }
    }
    let anchor = match (anchor, accretive) {
        (Some((phi, _)), _) => phi,
        (None, true) => 0.0,
        (None, false) => return Ok(out),
    };

    let rotated = x.rotate(anchor);
    let Ok((lo, hi)) = slope_interval(&rotated) else {
        return Ok(out);
    };
    let (arg_lo, arg_hi) = (lo.atan(), hi.atan());
    let centred = wrap_angle(anchor - 0.5 * (arg_lo + arg_hi));

    // Report the index measured at the centred rotation; fall back to the
    // anchor if centring pushed the range onto the imaginary axis.
    let (phi, index) = match accretive_sector_index(&x.rotate(centred)) {
        Ok(idx) => (centred, idx),
        Err(_) => (anchor, accretive_sector_index(&rotated)?),
    };
    out.sectorial = true;
    out.rotation = Some(phi);
    out.index = Some(index.min(PI / 2.0 - f64::EPSILON));
    Ok(out)
}

/// `X ∈ M^s_{n,α}` up to `slack`: sectorial with index at most `α + slack`.
pub fn in_class(x: &ComplexMatrix, alpha: f64, slack: f64) -> Result<bool> {
    if !(0.0..PI / 2.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, pi/2), got {alpha}")));
    }
    if slack.is_nan() || slack < 0.0 {
        return Err(Error::InvalidParameter(format!("slack must be non-negative, got {slack}")));
    }
    let c = optimal_rotation(x)?;
    Ok(c.sectorial && c.index.is_some_and(|idx| idx <= alpha + slack))
}

/// Smallest eigenvalue of `[[sec α Re T, T], [T*, sec α Re T]]`, which is
/// positive semidefinite whenever `W(T) ⊂ S_α`.
pub fn block_psd_certificate(t: &ComplexMatrix, alpha: f64) -> Result<PsdCertificate> {
    if !(0.0..PI / 2.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, pi/2), got {alpha}")));
    }
    let sec = 1.0 / alpha.cos();
    let re = t.real_part();
    let diag = re.scale_real(sec);
    let block = ComplexMatrix::block2(&diag, t, &t.adjoint(), &diag)?;
    let min_eigenvalue = *hermitian_eigvals(&block)?.last().expect("non-empty");
    let scale = sec * operator_norm(&re);
    Ok(PsdCertificate { alpha, min_eigenvalue, holds: min_eigenvalue >= -CERTIFICATE_TOL * (1.0 + scale) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one_plus_i(n: usize) -> ComplexMatrix {
        ComplexMatrix::identity(n).scale(c(1.0, 1.0))
    }

    fn split_diag() -> ComplexMatrix {
        ComplexMatrix::diag(&[c(1.0, 1.0), c(1.0, -1.0)])
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn positive_definite_examples() {
        assert!(is_positive_definite(&ComplexMatrix::identity(3), 1e-10).unwrap());
        assert!(!is_positive_definite(&ComplexMatrix::real_diag(&[1.0, -1.0]), 1e-10).unwrap());
        assert!(!is_positive_definite(&ComplexMatrix::real_diag(&[1.0, 1e-14]), 1e-10).unwrap());
        assert!(is_positive_definite(&nilpotent(), 1e-10).is_err());
    }

    #[test]
    fn accretive_examples() {
        assert!(is_accretive(&ComplexMatrix::identity(2)));
        assert!(!is_accretive(&nilpotent()));
        assert!(is_accretive(&one_plus_i(2)));
    }

    #[test]
    fn accretive_dissipative_examples() {
        assert!(is_accretive_dissipative(&one_plus_i(2)));
        assert!(!is_accretive_dissipative(&ComplexMatrix::identity(2)));
        assert!(!is_accretive_dissipative(&split_diag()));
    }

    #[test]
    fn accretive_index_examples() {
        assert_eq!(accretive_sector_index(&ComplexMatrix::identity(3)).unwrap(), 0.0);
        assert!((accretive_sector_index(&split_diag()).unwrap() - FRAC_PI_4).abs() < 1e-15);
        let x = ComplexMatrix::diag(&[c(2.0, 1.0), c(2.0, -3.0)]);
        assert!((accretive_sector_index(&x).unwrap() - 0.982_793_723_247_329).abs() < 1e-12);
        assert_eq!(accretive_sector_index(&nilpotent()), Err(Error::NotAccretive));
    }

    #[test]
    fn rotation_of_imaginary_identity() {
        let r = optimal_rotation(&ComplexMatrix::identity(2).scale(c(0.0, 1.0))).unwrap();
        assert!(r.sectorial);
        assert!(r.dissipative && !r.accretive);
        assert!((r.rotation.unwrap() - 1.5 * PI).abs() < 1e-12);
        assert!(r.index.unwrap() < 1e-12);
    }

    #[test]
    fn rotation_of_one_plus_i() {
        let r = optimal_rotation(&one_plus_i(2)).unwrap();
        assert!(r.sectorial && r.accretive_dissipative);
        assert!((r.rotation.unwrap() - 1.75 * PI).abs() < 1e-12);
        assert!(r.index.unwrap() < 1e-12);
    }

    #[test]
    fn nilpotent_is_not_sectorial() {
        let r = optimal_rotation(&nilpotent()).unwrap();
        assert!(!r.sectorial);
        assert_eq!(r.rotation, None);
        assert_eq!(r.index, None);
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        assert!(matches!(optimal_rotation(&ComplexMatrix::zeros(2)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn class_membership_examples() {
        assert!(in_class(&one_plus_i(2), FRAC_PI_4, 0.0).unwrap());
        assert!(!in_class(&split_diag(), PI / 8.0, 1e-9).unwrap());
        assert!(in_class(&split_diag(), FRAC_PI_4, 1e-9).unwrap());
        assert!(in_class(&one_plus_i(2), PI / 2.0, 0.0).is_err());
    }

    #[test]
    fn certificate_examples() {
        let id = block_psd_certificate(&ComplexMatrix::identity(2), 0.0).unwrap();
        assert!(id.holds);
        assert!(id.min_eigenvalue.abs() < 1e-14);
        assert!(block_psd_certificate(&split_diag(), FRAC_PI_4).unwrap().holds);
        let tight = block_psd_certificate(&split_diag(), PI / 8.0).unwrap();
        assert!(!tight.holds);
        assert!(tight.min_eigenvalue < 0.0);
    }
}
