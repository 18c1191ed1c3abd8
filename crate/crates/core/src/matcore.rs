//! Dense complex matrices and the handful of factorizations the rest of the
//! crate is built on.
//!
//! Matrices are small (the toolkit targets n ≤ 64), square, and immutable:
//! every operation returns a fresh value.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entries more than this far from Hermitian symmetry (relative to the
/// Frobenius norm) are rejected by [`hermitian_eig`].
pub const HERMITIAN_REJECT_TOL: f64 = 1e-8;

/// Jacobi sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of the matrix norm.
pub const JACOBI_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// A dense, square, complex matrix stored in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from rows, checking squareness and finiteness.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, row: i, cols: row.len() });
            }
            for (j, z) in row.into_iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(z);
            }
        }
        Ok(Self { n, data })
    }

    /// Convenience constructor for real-valued test matrices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { Complex64::new(0.0, 0.0) })
    }

    pub fn real_diag(entries: &[f64]) -> Self {
        let entries: Vec<_> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diag(&entries)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        let n = cols.len();
        Self::from_fn(n, |i, j| cols[j][i])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * c).collect() }
    }

    /// Multiplies by the unimodular scalar `e^{iφ}`.
    pub fn rotate(&self, phi: f64) -> Self {
        self.scale(Complex64::from_polar(1.0, phi))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise distance from Hermitian symmetry, `max |h_ij - conj(h_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `X*X - XX*` measured in Frobenius norm.
    pub fn normality_defect(&self) -> f64 {
        let a = self.adjoint();
        (&(&a * self) - &(self * &a)).frobenius_norm()
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(&(self * other) - &(other * self))
    }

    /// `(X + X*) / 2`, with an exactly real diagonal.
    pub fn real_part(&self) -> Self {
        let mut out = Self::from_fn(self.n, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5);
        out.force_real_diagonal();
        out
    }

    /// `(X - X*) / 2i`, with an exactly real diagonal.
    pub fn imag_part(&self) -> Self {
        let half_over_i = Complex64::new(0.0, -0.5);
        let mut out = Self::from_fn(self.n, |i, j| (self.get(i, j) - self.get(j, i).conj()) * half_over_i);
        out.force_real_diagonal();
        out
    }

    fn force_real_diagonal(&mut self) {
        for i in 0..self.n {
            self.data[i * self.n + i].im = 0.0;
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.n);
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨Xv, v⟩ = v* X v`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Complex64 {
        let xv = self.mul_vec(v);
        xv.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
    }

    /// Frobenius distance to another matrix of the same size.
    pub fn distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Embeds four n×n blocks into a 2n×2n matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        check_same_dim(a, b)?;
        check_same_dim(a, c)?;
        check_same_dim(a, d)?;
        let n = a.n;
        Ok(Self::from_fn(2 * n, |i, j| {
            let blk = match (i < n, j < n) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            blk.get(i % n, j % n)
        }))
    }
}

pub(crate) fn check_same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { left: a.n, right: b.n });
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for row in self.data.chunks(self.n) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix addition");
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix subtraction");
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|z| -z).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (out, b) in data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *out += a * b;
                }
            }
        }
        ComplexMatrix { n, data }
    }
}

/// Splits `X = A + iB` into its Hermitian real and imaginary parts.
pub fn cartesian_decompose(x: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    (x.real_part(), x.imag_part())
}

/// Entrywise (Schur) product.
pub fn hadamard(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_same_dim(x, y)?;
    Ok(ComplexMatrix { n: x.n, data: x.data.iter().zip(&y.data).map(|(a, b)| a * b).collect() })
}

/// Ordinary product `X_1 X_2 ... X_m`.
pub fn product(factors: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors.split_first().ok_or(Error::InvalidParameter("empty factor list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| {
        check_same_dim(&acc, f)?;
        Ok(&acc * f)
    })
}

/// Hadamard product `X_1 ∘ X_2 ∘ ... ∘ X_m`.
pub fn hadamard_product(factors: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors.split_first().ok_or(Error::InvalidParameter("empty factor list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| hadamard(&acc, f))
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, aligned with `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V f(Λ) V*` for a scalar function of the eigenvalues.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.n();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v.get(i, k) * fl[k] * v.get(j, k).conj()).sum()
        });
        out.force_real_diagonal();
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }
}

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic complex
/// Jacobi rotations.
///
/// Inputs within [`HERMITIAN_REJECT_TOL`] (relative) of Hermitian are
/// symmetrized as `(H + H*) / 2` before factoring.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let (values, vectors) = jacobi(checked_symmetrize(h)?, true);
    let vectors = vectors.expect("vectors requested");
    let n = h.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    Ok(SpectralDecomposition {
        eigenvalues: order.iter().map(|&k| values[k]).collect(),
        eigenvectors: ComplexMatrix::from_fn(n, |i, j| vectors[i * n + order[j]]),
    })
}

/// Eigenvalues only, descending. Skips eigenvector accumulation.
pub fn hermitian_eigvals(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(checked_symmetrize(h)?, false);
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Largest singular value, `sqrt(λ_max(X*X))`.
pub fn operator_norm(x: &ComplexMatrix) -> f64 {
    let gram = &x.adjoint() * x;
    let top = hermitian_eigvals(&gram).expect("X*X is Hermitian by construction")[0];
    top.max(0.0).sqrt()
}

fn checked_symmetrize(h: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_REJECT_TOL * h.frobenius_norm() {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = h.n();
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (h.get(i, j) + h.get(j, i).conj()) * 0.5;
        }
        a[i * n + i].im = 0.0;
    }
    Ok(a)
}

/// Cyclic Jacobi on a Hermitian matrix in row-major storage.
///
/// Each rotation is `G = D R` where `D` strips the phase of `a_pq` and `R` is
/// the classical real Jacobi rotation of the resulting real 2×2 block.
fn jacobi(mut a: Vec<Complex64>, want_vectors: bool) -> (Vec<f64>, Option<Vec<Complex64>>) {
    let n = (a.len() as f64).sqrt() as usize;
    let mut v = want_vectors.then(|| {
        let mut id = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            id[i * n + i] = Complex64::new(1.0, 0.0);
        }
        id
    });
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = JACOBI_TOL * norm;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a[i * n + j].norm_sqr();
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 || r <= f64::EPSILON * 1e-3 * norm {
                    continue;
                }
                let phase = apq / r; // e^{iβ}
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase_c = phase.conj();
                // G = [[c, s], [-s e^{-iβ}, c e^{-iβ}]] acting on (p, q).
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = phase_c * (-s);
                let g_qq = phase_c * c;

                // A <- A G (columns p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * g_pp + akq * g_qp;
                    a[k * n + q] = akp * g_pq + akq * g_qq;
                }
                // A <- G* A (rows p, q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * g_pp + vkq * g_qp;
                        v[k * n + q] = vkp * g_pq + vkq * g_qq;
                    }
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i].re).collect(), v)
}
