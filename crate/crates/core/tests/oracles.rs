//! Cross-checks against routes that share no code with the implementation:
//! the closed-form elliptical range of a 2×2 matrix, and a brute-force scan
//! over rotations for the sector index.

use std::f64::consts::TAU;

use numrad::sector::slope_interval;
use numrad::{
    accretive_sector_index, generate, numerical_radius, optimal_rotation, Complex64, ComplexMatrix, GenSpec, MatrixClass,
};

/// `ω` of a 2×2 matrix by dense sampling of its elliptical numerical range:
/// foci at the eigenvalues, minor axis `sqrt(tr(X*X) - |λ1|² - |λ2|²)`.
fn ellipse_radius(x: &ComplexMatrix) -> f64 {
    let (a, b, c, d) = (x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1));
    let half_tr = (a + d) * 0.5;
    let disc = (half_tr * half_tr - (a * d - b * c)).sqrt();
    let (l1, l2) = (half_tr + disc, half_tr - disc);
    let frob2: f64 = [a, b, c, d].iter().map(|z| z.norm_sqr()).sum();
    let minor = (frob2 - l1.norm_sqr() - l2.norm_sqr()).max(0.0).sqrt();
    let major = ((l1 - l2).norm_sqr() + minor * minor).sqrt();
    let tilt = if (l1 - l2).norm() > 0.0 { (l1 - l2) / (l1 - l2).norm() } else { Complex64::new(1.0, 0.0) };
    let steps = 1_000_000;
    (0..steps)
        .map(|k| {
            let t = TAU * k as f64 / steps as f64;
            (half_tr + tilt * Complex64::new(0.5 * major * t.cos(), 0.5 * minor * t.sin())).norm()
        })
        .fold(0.0, f64::max)
}

#[test]
fn radius_matches_ellipse_for_2x2() {
    for seed in 0..100u64 {
        let x = generate(&GenSpec::new(MatrixClass::General, 2, seed).with_scale(1.0 + seed as f64 / 20.0))
            .unwrap()
            .single();
        let oracle = ellipse_radius(&x);
        let w = numerical_radius(&x);
        assert!((w - oracle).abs() <= 1e-8, "seed {seed}: {w} vs {oracle}");
    }
}

#[test]
fn ellipse_oracle_on_known_matrices() {
    let x = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
    assert!((ellipse_radius(&x) - 1.0).abs() < 1e-12);
    let d = ComplexMatrix::real_diag(&[3.0, -5.0]);
    assert!((ellipse_radius(&d) - 5.0).abs() < 1e-12);
}

/// Smallest index over rotations by grid scan plus ternary refinement of the
/// (V-shaped) index-versus-angle curve.
fn brute_force_index(x: &ComplexMatrix) -> Option<f64> {
    let index_at = |phi: f64| accretive_sector_index(&x.rotate(phi)).ok();
    let grid = 20_000;
    let (best_k, _) = (0..grid)
        .filter_map(|k| index_at(TAU * k as f64 / grid as f64).map(|v| (k, v)))
        .min_by(|a, b| a.1.total_cmp(&b.1))?;
    let step = TAU / grid as f64;
    let (mut lo, mut hi) = ((best_k as f64 - 1.0) * step, (best_k as f64 + 1.0) * step);
    let f = |phi: f64| index_at(phi).unwrap_or(f64::INFINITY);
    while hi - lo > 1e-12 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) { hi = m2 } else { lo = m1 }
    }
    Some(f(0.5 * (lo + hi)))
}

#[test]
fn optimal_rotation_matches_brute_force() {
    for seed in 0..40u64 {
        let alpha = 0.05 + 1.4 * (seed as f64 / 40.0);
        let x = generate(&GenSpec::new(MatrixClass::RotatedSectorial(alpha), 1 + (seed % 4) as usize, seed))
            .unwrap()
            .single();
        let fast = optimal_rotation(&x).unwrap();
        let slow = brute_force_index(&x).unwrap();
        let idx = fast.index.unwrap();
        assert!((idx - slow).abs() <= 1e-7, "seed {seed}: {idx} vs {slow}");
        assert!(idx <= alpha + 1e-9, "seed {seed}");
    }
}

#[test]
fn optimal_rotation_centres_the_range() {
    for seed in 0..50u64 {
        let x = generate(&GenSpec::new(MatrixClass::RotatedSectorial(1.0), 3, seed)).unwrap().single();
        let class = optimal_rotation(&x).unwrap();
        let (lo, hi) = slope_interval(&x.rotate(class.rotation.unwrap())).unwrap();
        assert!((lo.atan() + hi.atan()).abs() <= 1e-10, "seed {seed}");
    }
}

#[test]
fn sector_contains_sampled_range() {
    // Every sampled ⟨zXv, v⟩ lies in the reported sector.
    use numrad::randgen::{random_unit_vector, stream};
    for seed in 0..30u64 {
        let x = generate(&GenSpec::new(MatrixClass::RotatedSectorial(0.8), 4, seed)).unwrap().single();
        let class = optimal_rotation(&x).unwrap();
        let zx = x.scale(class.rotation_scalar().unwrap());
        let tan = (class.index.unwrap() + 1e-6).tan();
        let mut rng = stream(seed, "sector-sample", 0);
        for _ in 0..2000 {
            let p = zx.quadratic_form(&random_unit_vector(&mut rng, 4));
            assert!(p.re > 0.0 && p.im.abs() <= tan * p.re, "seed {seed}");
        }
    }
}
