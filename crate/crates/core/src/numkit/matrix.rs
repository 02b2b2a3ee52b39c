use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix. Every operator of the crate (x, y, the compressed
/// blocks, the differentials) is carried by this type.
#[derive(Clone, PartialEq)]
pub struct CMatrix(DMatrix<Complex64>);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn scalar(value: Complex64) -> Self {
        Self(DMatrix::from_element(1, 1, value))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    /// Builds a matrix from row vectors, rejecting ragged input and non-finite entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_inner(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
    }

    /// Real-valued convenience constructor, mostly for tests and examples.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_inner(m: DMatrix<Complex64>) -> Result<Self> {
        let m = Self(m);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::InvalidMatrix)
        }
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
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

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.0[(i, j)] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows().min(self.cols())).map(|i| self.0[(i, i)]).collect()
    }

    /// `self + c·I`.
    pub fn shifted(&self, c: Complex64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.nrows().min(m.ncols()) {
            m[(i, i)] += c;
        }
        Self(m)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self(self.0.map(|z| z * c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Copy of the `nrows × ncols` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, nrows: usize, ncols: usize) -> Self {
        Self(self.0.view((row, col), (nrows, ncols)).into_owned())
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let (n, m) = (a.rows() + b.rows(), a.cols() + b.cols());
        let mut out = DMatrix::zeros(n, m);
        out.view_mut((0, 0), (a.rows(), a.cols())).copy_from(&a.0);
        out.view_mut((a.rows(), a.cols()), (b.rows(), b.cols())).copy_from(&b.0);
        Self(out)
    }

    /// `[a | b]`.
    pub fn hstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.rows(), b.rows(), "hstack row mismatch");
        let mut out = DMatrix::zeros(a.rows(), a.cols() + b.cols());
        out.view_mut((0, 0), (a.rows(), a.cols())).copy_from(&a.0);
        out.view_mut((0, a.cols()), (b.rows(), b.cols())).copy_from(&b.0);
        Self(out)
    }

    /// `[a; b]`.
    pub fn vstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.cols(), b.cols(), "vstack column mismatch");
        let mut out = DMatrix::zeros(a.rows() + b.rows(), a.cols());
        out.view_mut((0, 0), (a.rows(), a.cols())).copy_from(&a.0);
        out.view_mut((a.rows(), 0), (b.rows(), b.cols())).copy_from(&b.0);
        Self(out)
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    /// Largest modulus of an entry strictly below the diagonal.
    pub fn lower_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.cols() {
            for i in (j + 1)..self.rows() {
                worst = worst.max(self.0[(i, j)].norm());
            }
        }
        worst
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMatrix({}x{}) ", self.rows(), self.cols())?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix(&self.0 - &rhs.0)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix(-&self.0)
    }
}
