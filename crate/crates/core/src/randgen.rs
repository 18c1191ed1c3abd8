//! Seeded, class-conditional random matrices.
//!
//! Every draw comes from a ChaCha8 stream keyed by `(seed, tag, index)`:
//! the seed selects the key, and the tag/index pair selects the stream via
//! [`stream_id`]. The same triple always yields the same stream, regardless of
//! thread scheduling, so generated corpora are reproducible bit for bit.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, hermitian_eigvals, ComplexMatrix};

/// Ridge added to Gram matrices when a positive definite draw is requested.
pub const PD_RIDGE: f64 = 1e-3;

/// Hypothesis classes the generator can instantiate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "class", content = "alpha", rename_all = "kebab-case")]
pub enum MatrixClass {
    General,
    Hermitian,
    Psd,
    Pd,
    Normal,
    /// `(p(M), q(M))` for random cubic polynomials of a shared `M`.
    CommutingPair,
    /// A normal `X` with a repeated eigenvalue and a non-normal `Y` commuting with it.
    NormalCommutingPair,
    Accretive,
    Dissipative,
    AccretiveDissipative,
    /// Accretive with sector index exactly `α` at rotation 0.
    SectorialWithIndex(f64),
    /// `SectorialWithIndex(α)` times a random unimodular scalar.
    RotatedSectorial(f64),
}

impl MatrixClass {
    pub fn is_pair(&self) -> bool {
        matches!(self, MatrixClass::CommutingPair | MatrixClass::NormalCommutingPair)
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixClass::General => write!(f, "general"),
            MatrixClass::Hermitian => write!(f, "hermitian"),
            MatrixClass::Psd => write!(f, "psd"),
            MatrixClass::Pd => write!(f, "pd"),
            MatrixClass::Normal => write!(f, "normal"),
            MatrixClass::CommutingPair => write!(f, "commuting-pair"),
            MatrixClass::NormalCommutingPair => write!(f, "normal-commuting-pair"),
            MatrixClass::Accretive => write!(f, "accretive"),
            MatrixClass::Dissipative => write!(f, "dissipative"),
            MatrixClass::AccretiveDissipative => write!(f, "accretive-dissipative"),
            MatrixClass::SectorialWithIndex(a) => write!(f, "sectorial-with-index({a})"),
            MatrixClass::RotatedSectorial(a) => write!(f, "rotated-sectorial({a})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenSpec {
    pub class: MatrixClass,
    pub dim: usize,
    pub seed: u64,
    /// Typical entry magnitude.
    pub scale: f64,
}

impl GenSpec {
    pub fn new(class: MatrixClass, dim: usize, seed: u64) -> Self {
        Self { class, dim, seed, scale: 1.0 }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter("dim must be at least 1".into()));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {}", self.scale)));
        }
        if let MatrixClass::SectorialWithIndex(a) | MatrixClass::RotatedSectorial(a) = self.class {
            if !(0.0..PI / 2.0).contains(&a) {
                return Err(Error::InvalidParameter(format!("alpha must lie in [0, pi/2), got {a}")));
            }
        }
        Ok(())
    }
}

/// Output of [`generate`]: one matrix, or two for the pair classes.
#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
}

impl Generated {
    pub fn single(self) -> ComplexMatrix {
        match self {
            Generated::Single(x) => x,
            Generated::Pair(x, _) => x,
        }
    }

    pub fn into_vec(self) -> Vec<ComplexMatrix> {
        match self {
            Generated::Single(x) => vec![x],
            Generated::Pair(x, y) => vec![x, y],
        }
    }
}

/// FNV-1a over the tag, mixed with the index through splitmix64.
pub fn stream_id(tag: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(h ^ splitmix64(index))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random stream for `(seed, tag, index)`.
pub fn stream(seed: u64, tag: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(tag, index));
    rng
}

/// Derives a child seed, for callers that need independent [`GenSpec`]s.
pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    splitmix64(seed ^ stream_id(tag, index))
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| complex_normal(rng))
}

/// Unit vector with i.i.d. complex normal entries, normalized.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-150 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Gram-Schmidt orthonormalization of a complex Gaussian matrix. The implied
/// `R` factor has a positive diagonal, which fixes the column phases.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        // Two passes of modified Gram-Schmidt keep the columns orthonormal to
        // working precision.
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_columns(&cols)
}

fn hermitian_draw<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n);
    (&g + &g.adjoint()).scale_real(0.5 / (n as f64).sqrt())
}

fn gram<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, |_, j| if j < rank { complex_normal(rng) } else { Complex64::new(0.0, 0.0) });
    let mut out = (&g * &g.adjoint()).scale_real(1.0 / n as f64);
    // G G* is Hermitian up to rounding; make it exact.
    out = out.real_part();
    out
}

fn pd_draw<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gram(rng, n, n);
    &g + &ComplexMatrix::identity(n).scale_real(PD_RIDGE)
}

/// Horner evaluation of a polynomial with the given coefficients (constant first).
fn poly_eval(coeffs: &[Complex64], m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.n();
    let id = ComplexMatrix::identity(n);
    let mut acc = ComplexMatrix::zeros(n);
    for &c in coeffs.iter().rev() {
        acc = &(&acc * m) + &id.scale(c);
    }
    acc
}

fn sectorial_draw<R: Rng + ?Sized>(rng: &mut R, n: usize, alpha: f64) -> ComplexMatrix {
    let a = pd_draw(rng, n);
    let s = hermitian_draw(rng, n);
    let spread = hermitian_eigvals(&s).expect("hermitian draw");
    let top = spread[0].abs().max(spread[n - 1].abs());
    let target = alpha.tan();
    let s = if top > 0.0 && target > 0.0 { s.scale_real(target / top) } else { ComplexMatrix::zeros(n) };
    let root = hermitian_eig(&a).expect("pd draw").map(|l| l.sqrt());
    let inner = &ComplexMatrix::identity(n) + &s.scale(Complex64::new(0.0, 1.0));
    &(&root * &inner) * &root
}

/// Draws a matrix (or a pair) from the requested class. Deterministic in `spec`.
pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let n = spec.dim;
    let mut rng = stream(spec.seed, "generate", 0);
    let rng = &mut rng;
    let i = Complex64::new(0.0, 1.0);
    let out = match spec.class {
        MatrixClass::General => Generated::Single(gaussian_matrix(rng, n).scale_real(1.0 / (n as f64).sqrt())),
        MatrixClass::Hermitian => Generated::Single(hermitian_draw(rng, n)),
        MatrixClass::Psd => {
            let rank = rng.random_range(1..=n);
            Generated::Single(gram(rng, n, rank))
        }
        MatrixClass::Pd => Generated::Single(pd_draw(rng, n)),
        MatrixClass::Normal => {
            let u = random_unitary(rng, n);
            let d: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
            Generated::Single(&(&u * &ComplexMatrix::diag(&d)) * &u.adjoint())
        }
        MatrixClass::CommutingPair => {
            let m = gaussian_matrix(rng, n).scale_real(1.0 / (n as f64).sqrt());
            let poly = |rng: &mut ChaCha8Rng| {
                let degree = rng.random_range(1..=3);
                let coeffs: Vec<Complex64> = (0..=degree).map(|_| complex_normal(rng)).collect();
                poly_eval(&coeffs, &m)
            };
            let x = poly(rng);
            let y = poly(rng);
            Generated::Pair(x, y)
        }
        MatrixClass::NormalCommutingPair => {
            let u = random_unitary(rng, n);
            let k = rng.random_range(1..=n);
            let (d1, d2) = (complex_normal(rng), complex_normal(rng));
            let d: Vec<Complex64> = (0..n).map(|j| if j < k { d1 } else { d2 }).collect();
            let g = gaussian_matrix(rng, n);
            let blocks = ComplexMatrix::from_fn(n, |r, c| {
                if (r < k) == (c < k) { g.get(r, c) } else { Complex64::new(0.0, 0.0) }
            });
            let x = &(&u * &ComplexMatrix::diag(&d)) * &u.adjoint();
            let y = &(&u * &blocks) * &u.adjoint();
            Generated::Pair(x, y)
        }
        MatrixClass::Accretive => {
            let a = pd_draw(rng, n);
            let b = hermitian_draw(rng, n);
            Generated::Single(&a + &b.scale(i))
        }
        MatrixClass::Dissipative => {
            let a = hermitian_draw(rng, n);
            let b = pd_draw(rng, n);
            Generated::Single(&a + &b.scale(i))
        }
        MatrixClass::AccretiveDissipative => {
            let a = pd_draw(rng, n);
            let b = pd_draw(rng, n);
            Generated::Single(&a + &b.scale(i))
        }
        MatrixClass::SectorialWithIndex(alpha) => Generated::Single(sectorial_draw(rng, n, alpha)),
        MatrixClass::RotatedSectorial(alpha) => {
            let x = sectorial_draw(rng, n, alpha);
            let psi = rng.random_range(0.0..2.0 * PI);
            Generated::Single(x.rotate(psi))
        }
    };
    Ok(match out {
        Generated::Single(x) => Generated::Single(x.scale_real(spec.scale)),
        Generated::Pair(x, y) => Generated::Pair(x.scale_real(spec.scale), y.scale_real(spec.scale)),
    })
}
