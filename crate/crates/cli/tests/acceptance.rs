//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line (run with `--nocapture` to see them) and then asserts.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::path::Path;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use numrad::bounds::{self, EvalOptions};
use numrad::fuzz::{fuzz_all, FuzzConfig};
use numrad::matcore::{cartesian_decompose, hadamard, operator_norm};
use numrad::sector::block_psd_certificate;
use numrad::{
    accretive_sector_index, generate, numerical_radius, radius_lower_bound_sample, Complex64, ComplexMatrix, GenSpec,
    MatrixClass,
};
use numrad_cli::matrix_file::write_matrix;
use tempfile::TempDir;

/// Runtime limits are wall-clock, so criteria run one at a time.
static SERIAL: Mutex<()> = Mutex::new(());

fn verdict(id: u32, name: &str, ok: bool, detail: String) {
    println!("criterion {id:>2} {}: {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn x11() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap()
}

fn y11() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[2.0, 0.0]]).unwrap()
}

fn draw(class: MatrixClass, n: usize, seed: u64) -> ComplexMatrix {
    generate(&GenSpec::new(class, n, seed)).unwrap().single()
}

#[test]
fn criterion_01_product_example() {
    let _g = serial();
    let start = Instant::now();
    let (x, y) = (x11(), y11());
    let (wx, wy, wxy) = (numerical_radius(&x), numerical_radius(&y), numerical_radius(&(&x * &y)));
    let elapsed = start.elapsed();
    let err = (wx - 1.0).abs().max((wy - 1.0).abs()).max((wxy - 4.0).abs());
    verdict(
        1,
        "w(X) = w(Y) = 1, w(XY) = 4",
        err <= 1e-8 && elapsed < Duration::from_secs(1),
        format!("w(X) = {wx:.12}, w(Y) = {wy:.12}, w(XY) = {wxy:.12}, max error {err:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_hadamard_example() {
    let _g = serial();
    let x = x11();
    let w = numerical_radius(&hadamard(&x, &x).unwrap());
    let r = bounds::evaluate("HAD2", &[x.clone(), x], &EvalOptions::default()).unwrap();
    let ratio = r.ratio.unwrap();
    verdict(
        2,
        "w(X o X) = 2, HAD2 sharp",
        (w - 2.0).abs() <= 1e-8 && (ratio - 1.0).abs() <= 1e-8,
        format!("w(X o X) = {w:.12}, HAD2 ratio = {ratio:.12}"),
    );
}

#[test]
fn criterion_03_norm_bracket() {
    let _g = serial();
    let start = Instant::now();
    let mut bracket_fail = 0;
    for seed in 0..1000u64 {
        let x = draw(MatrixClass::General, 1 + (seed % 8) as usize, seed);
        let (w, norm) = (numerical_radius(&x), operator_norm(&x));
        if !(norm / 2.0 - 1e-8 <= w && w <= norm + 1e-8) {
            bracket_fail += 1;
        }
    }
    let mut normal_err: f64 = 0.0;
    for seed in 0..200u64 {
        let x = draw(MatrixClass::Normal, 1 + (seed % 8) as usize, 10_000 + seed);
        normal_err = normal_err.max((numerical_radius(&x) - operator_norm(&x)).abs());
    }
    let elapsed = start.elapsed();
    verdict(
        3,
        "norm/2 <= w <= norm, w = norm for normal",
        bracket_fail == 0 && normal_err <= 1e-8 && elapsed < Duration::from_secs(60),
        format!("{bracket_fail}/1000 bracket failures, normal max |w - norm| = {normal_err:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_04_sampling_oracle() {
    let _g = serial();
    let (mut over, mut short, mut worst) = (0, 0, f64::INFINITY);
    let mut worst_case = (0, 0);
    for seed in 0..200u64 {
        let n = 1 + (seed % 4) as usize;
        let x = draw(MatrixClass::General, n, 20_000 + seed);
        let w = numerical_radius(&x);
        let s = radius_lower_bound_sample(&x, 10_000, seed).unwrap();
        if s > w + 1e-9 {
            over += 1;
        }
        let frac = s / w;
        if frac < 0.95 {
            short += 1;
        }
        if frac < worst {
            worst = frac;
            worst_case = (seed, n);
        }
    }
    verdict(
        4,
        "sampling oracle within [-1e-9, +5%], n <= 4, 1e4 samples",
        over == 0 && short == 0,
        format!(
            "{over}/200 oracle overshoots, {short}/200 below 95% (worst {:.4} at seed {}, n = {})",
            worst, worst_case.0, worst_case.1
        ),
    );
}

#[test]
fn criterion_05_index_exactness() {
    let _g = serial();
    let mut err: f64 = 0.0;
    for alpha in [0.0, PI / 12.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        for seed in 0..20u64 {
            let x = draw(MatrixClass::SectorialWithIndex(alpha), 1 + (seed % 6) as usize, seed);
            err = err.max((accretive_sector_index(&x).unwrap() - alpha).abs());
        }
    }
    let d = ComplexMatrix::diag(&[Complex64::new(1.0, 1.0), Complex64::new(1.0, -1.0)]);
    let diag_err = (accretive_sector_index(&d).unwrap() - FRAC_PI_4).abs();
    verdict(
        5,
        "sector index exactness",
        err <= 1e-8 && diag_err <= 1e-10,
        format!("generated max error {err:.1e} over 100 matrices, diag(1+i, 1-i) error {diag_err:.1e}"),
    );
}

#[test]
fn criterion_06_block_certificate() {
    let _g = serial();
    let (mut failures, mut worst) = (0, f64::INFINITY);
    for seed in 0..300u64 {
        let alpha = 1.5 * (seed as f64 / 300.0);
        let scale = 10f64.powf(seed as f64 % 5.0 - 2.0);
        let spec = GenSpec::new(MatrixClass::SectorialWithIndex(alpha), 1 + (seed % 6) as usize, 30_000 + seed)
            .with_scale(scale);
        let t = generate(&spec).unwrap().single();
        let index = accretive_sector_index(&t).unwrap();
        let cert = block_psd_certificate(&t, index).unwrap();
        if !cert.holds {
            failures += 1;
        }
        worst = worst.min(cert.min_eigenvalue / scale);
    }
    verdict(
        6,
        "block PSD certificate on sectorial matrices",
        failures == 0,
        format!("{failures}/300 failures, smallest min eigenvalue / scale = {worst:.2e}"),
    );
}

#[test]
fn criterion_07_fuzz_sweep() {
    let _g = serial();
    let start = Instant::now();
    let config = FuzzConfig::new(500, vec![2, 3, 4, 6], 2024);
    let summaries = fuzz_all(&config).unwrap();
    let elapsed = start.elapsed();
    println!("{:<13} {:>10} {:>8} {:>20} {:>12}  generator", "bound", "applicable", "skipped", "worst ratio", "mean ratio");
    for s in &summaries {
        println!(
            "{:<13} {:>10} {:>8} {:>20.16} {:>12.6}  {}",
            s.bound,
            s.applicable,
            s.skipped,
            s.worst_ratio.unwrap_or(f64::NAN),
            s.mean_ratio.unwrap_or(f64::NAN),
            s.generator
        );
    }
    let violations: usize = summaries.iter().map(|s| s.violations.len()).sum();
    let short: Vec<_> = summaries.iter().filter(|s| s.applicable < 500).map(|s| s.bound.as_str()).collect();
    verdict(
        7,
        "fuzz sweep, 500 trials per bound, dims {2,3,4,6}",
        violations == 0
            && short.is_empty()
            && summaries.len() == bounds::catalog().len()
            && elapsed < Duration::from_secs(300),
        format!("{} bounds, {violations} violations, short of 500: {short:?}, {elapsed:?}", summaries.len()),
    );
}

#[test]
fn criterion_08_refinement_grid() {
    let _g = serial();
    // The double nearest pi/3 lies above pi/3; step down to stay in range.
    let top = FRAC_PI_3.next_down();
    let mut bad = Vec::new();
    for k in 0..10_000 {
        let t = k as f64 / 9_999.0;
        let a = t * top;
        if (1.0 / a.cos()).powi(2) > 4.0 {
            bad.push(a);
        }
        let b = t * FRAC_PI_4;
        if (1.0 / b.cos()).powi(2) > 2.0 {
            bad.push(b);
        }
    }
    verdict(
        8,
        "sec^2 <= 4 on [0, pi/3], sec^2 <= 2 on [0, pi/4]",
        bad.is_empty(),
        format!("2 x 10000 grid points, {} exceed the constant {:?}", bad.len(), bad.first()),
    );
}

#[test]
fn criterion_09_imaginary_part_and_norm() {
    let _g = serial();
    let (mut imag_fail, mut norm_fail) = (0, 0);
    let (mut imag_worst, mut norm_worst): (f64, f64) = (0.0, 0.0);
    for seed in 0..300u64 {
        let alpha = 1.5 * (seed as f64 / 300.0);
        let x = draw(MatrixClass::SectorialWithIndex(alpha), 1 + (seed % 6) as usize, 40_000 + seed);
        let (a, b) = cartesian_decompose(&x);
        let imag_rhs = alpha.tan() * numerical_radius(&a);
        let wb = numerical_radius(&b);
        if wb > imag_rhs * (1.0 + 1e-8) + 1e-12 {
            imag_fail += 1;
        }
        if imag_rhs > 0.0 {
            imag_worst = imag_worst.max(wb / imag_rhs);
        }
        let norm_rhs = operator_norm(&a) / alpha.cos();
        let nx = operator_norm(&x);
        if nx > norm_rhs * (1.0 + 1e-8) {
            norm_fail += 1;
        }
        norm_worst = norm_worst.max(nx / norm_rhs);
    }
    verdict(
        9,
        "w(Im X) <= tan a w(Re X), ||X|| <= sec a ||Re X||",
        imag_fail == 0 && norm_fail == 0,
        format!(
            "300 matrices: {imag_fail} imaginary-part failures (worst ratio {imag_worst:.6}), \
             {norm_fail} norm failures (worst ratio {norm_worst:.6})"
        ),
    );
}

fn run(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_numrad")).args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn criterion_10_cli_contract() {
    let _g = serial();
    let dir = TempDir::new().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    write_matrix(Path::new(&path("x.json")), &x11()).unwrap();
    write_matrix(Path::new(&path("y.json")), &y11()).unwrap();
    write_matrix(Path::new(&path("i.json")), &ComplexMatrix::identity(2).scale(Complex64::new(1.0, 1.0))).unwrap();
    std::fs::write(path("malformed.json"), r#"{"n": 3, "data": [[[1, 0]]]}"#).unwrap();
    std::fs::write(path("garbage.json"), "[1, 2").unwrap();
    let (x, y, i, bad, junk) = (path("x.json"), path("y.json"), path("i.json"), path("malformed.json"), path("garbage.json"));
    let csv = path("range.csv");

    let script: Vec<(Vec<&str>, i32)> = vec![
        (vec!["classify", &x], 0),
        (vec!["classify", &i], 0),
        (vec!["radius", &x], 0),
        (vec!["range", &x, "--samples", "64", "--out", &csv], 0),
        (vec!["verify", "--bound", "all", &x, &y], 0),
        (vec!["verify", "--bound", "ADPROD2", &i, &i], 0),
        (vec!["fuzz", "--bound", "GEN4", "--n", "50", "--dim", "2,3", "--seed", "1"], 0),
        (vec!["classify", &bad], 2),
        (vec!["radius", &junk], 2),
        (vec!["range", &bad], 2),
        (vec!["verify", "--bound", "GEN4", &x, &bad], 2),
        (vec!["verify", "--bound", "NOT-A-BOUND", &x, &y], 2),
        (vec!["fuzz", "--bound", "GEN4", "--n", "0"], 2),
        (vec!["verify", "--bound", "GEN4", "--rhs-scale", "0.5", &x, &y], 1),
        (vec!["verify", "--bound", "all", "--rhs-scale", "0.5", &i, &i], 1),
        (vec!["fuzz", "--bound", "HAD2", "--n", "20", "--rhs-scale", "0.01"], 1),
    ];
    let mismatches: Vec<String> = script
        .iter()
        .filter_map(|(args, want)| {
            let got = run(args);
            (got != *want).then(|| format!("{} {}: got {got}, want {want}", args[0], args[1]))
        })
        .collect();
    verdict(
        10,
        "CLI exit-code contract",
        mismatches.is_empty(),
        format!("{} scripted runs, mismatches: {mismatches:?}", script.len()),
    );
}
