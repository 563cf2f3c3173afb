//! Dense complex linear algebra.
//!
//! [`ComplexMatrix`] is a thin newtype over a `nalgebra` dynamic matrix that
//! rejects non-finite entries. The free functions in this module are the only
//! spectral routines the rest of the crate uses; each one takes an explicit
//! tolerance.
//!
//! Two-qubit operators use the index `2a + b`, so the basis order is
//! `|00>, |01>, |10>, |11>`.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for the Hermiticity check and the negative-eigenvalue clip.
pub const HERMITIAN_TOL: f64 = 1e-9;

const EIG_MAX_ITER: usize = 10_000;

/// A dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, &entries)))
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Square diagonal matrix with real diagonal `d`.
    pub fn from_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        Self(DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(d[i], 0.0) } else { Complex64::new(0.0, 0.0) }))
    }

    /// Column vector from complex entries.
    pub fn column(v: &[Complex64]) -> Self {
        Self(DMatrix::from_column_slice(v.len(), 1, v))
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.0[(i, j)] = z;
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Kronecker product, `self` index major.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "shape mismatch");
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `self - dagger(self)`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.rows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Deviation of `dagger(self) * self` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.dagger().matmul(self);
        gram.max_abs_diff(&Self::identity(self.cols()))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols(), other.rows(), "inner dimensions differ");
        Self(&self.0 * &other.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Pauli `σ_y`.
pub fn pauli_y() -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    ComplexMatrix::new(2, 2, vec![z, -i, i, z]).expect("finite")
}

/// `σ_y ⊗ σ_y`, real and involutory.
pub fn sigma_yy() -> ComplexMatrix {
    let y = pauli_y();
    y.kron(&y)
}

/// Conjugate transpose. Kept as a free function alongside the other kernels.
pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    m.dagger()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<DMatrix<Complex64>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let dev = m.hermitian_deviation();
    if dev > tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok((&m.0 + m.0.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues come back in non-increasing order, eigenvectors as the matching
/// columns of the second element. Equal eigenvalues keep the solver's order.
pub fn hermitian_eigh(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    let sym = check_hermitian(m, tol)?;
    let n = sym.nrows();
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, EIG_MAX_ITER).ok_or(Error::ConvergenceFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, ComplexMatrix(vectors)))
}

/// Real eigenvalues of a Hermitian matrix in non-increasing order.
pub fn hermitian_eigvals(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    hermitian_eigh(m, tol).map(|(values, _)| values)
}

/// Positive square root of a PSD Hermitian matrix.
///
/// Eigenvalues in `[-tol, 0]` are clipped to zero; anything more negative is
/// reported as [`Error::NotPSD`].
pub fn psd_sqrt(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    psd_sqrt_with_floor(m, tol, 0.0)
}

/// Like [`psd_sqrt`], but eigenvalues at or below `floor` are treated as an
/// exact null space.
///
/// Rounding leaves the kernel of a rank-deficient density with eigenvalues of
/// order `1e-16`, whose square roots (`1e-8`) would otherwise leak into
/// fidelity-type quantities.
pub fn psd_sqrt_with_floor(m: &ComplexMatrix, tol: f64, floor: f64) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eigh(m, tol)?;
    let n = values.len();
    let mut roots = Vec::with_capacity(n);
    for &mu in &values {
        if mu < -tol {
            return Err(Error::NotPSD(mu));
        }
        roots.push(if mu <= floor { 0.0 } else { mu.sqrt() });
    }
    let v = &vectors.0;
    let scaled = DMatrix::from_fn(n, n, |i, j| v[(i, j)] * roots[j]);
    Ok(ComplexMatrix(&scaled * v.adjoint()))
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    Ok(hermitian_eigvals(m, tol)?.iter().map(|x| x.abs()).sum())
}

/// Partial transpose on the first qubit of a 4x4 operator.
///
/// Swaps `a` and `a'` in `m[(2a + b, 2a' + b')]`; exact and involutory.
pub fn partial_transpose_a(m: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!((m.rows(), m.cols()), (4, 4), "two-qubit operator expected");
    ComplexMatrix::from_fn(4, 4, |r, c| {
        let (a, b) = (r / 2, r % 2);
        let (ap, bp) = (c / 2, c % 2);
        m.0[(2 * ap + b, 2 * a + bp)]
    })
}

/// `(σ_y ⊗ σ_y) m* (σ_y ⊗ σ_y)` for a 4x4 operator.
pub fn spin_flip(m: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!((m.rows(), m.cols()), (4, 4), "two-qubit operator expected");
    let yy = sigma_yy();
    &(&yy * &m.conj()) * &yy
}

/// Singular values in non-increasing order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let svd = m.0.clone().try_svd(false, false, f64::EPSILON, EIG_MAX_ITER).ok_or(Error::ConvergenceFailure)?;
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Number of singular values strictly above `tol`.
pub fn rank_with_tol(m: &ComplexMatrix, tol: f64) -> usize {
    singular_values(m).map(|s| s.iter().filter(|&&x| x > tol).count()).unwrap_or(0)
}
