//! Tolerance-aware dense complex linear algebra.
//!
//! Rank decisions use a relative singular-value cutoff: a singular value
//! counts iff `σ > rank_rel_tol · σ_max`. Null-space, range, and rank are
//! all read off the same SVD so that `rank + dim(kernel) = cols` holds
//! exactly.

mod matrix;
mod tolerance;

pub use matrix::CMatrix;
pub use tolerance::{Tolerances, DEFAULT_MATCH_TOL, DEFAULT_RESIDUAL_FACTOR};

use nalgebra::linalg::{Schur, SVD};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Orthonormal basis of a subspace of `ℂ^ambient_dim`, stored as columns.
/// Zero-dimensional subspaces are represented by a matrix with no columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: CMatrix,
}

impl SubspaceBasis {
    /// Wraps a column matrix; orthonormality is the caller's responsibility
    /// and can be checked with [`SubspaceBasis::orthonormality_residual`].
    pub fn from_columns(basis: CMatrix) -> Self {
        Self {
            ambient_dim: basis.rows(),
            basis,
        }
    }

    pub fn full(n: usize) -> Self {
        Self::from_columns(CMatrix::identity(n))
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_columns(CMatrix::zeros(n, 0))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// `|BᴴB − I|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let gram = &self.basis.adjoint() * &self.basis;
        (&gram - &CMatrix::identity(self.dim())).norm()
    }

    /// Orthogonal projector `BBᴴ` onto the subspace.
    pub fn projector(&self) -> CMatrix {
        &self.basis * &self.basis.adjoint()
    }

    /// `|v − BBᴴv|` for the columns of `v`.
    pub fn projection_residual(&self, v: &CMatrix) -> f64 {
        let coords = &self.basis.adjoint() * v;
        (v - &(&self.basis * &coords)).norm()
    }

    /// Concatenates the columns of several bases of the same ambient space.
    pub fn concat(parts: &[&SubspaceBasis]) -> CMatrix {
        let n = parts.first().map_or(0, |p| p.ambient_dim);
        parts
            .iter()
            .fold(CMatrix::zeros(n, 0), |acc, p| CMatrix::hstack(&acc, &p.basis))
    }
}

/// SVD of `m` with zero rows appended when `rows < cols`. Padding leaves the
/// nonzero singular values and singular vectors of `m` unchanged and makes
/// the right factor a complete unitary `cols × cols` matrix.
struct PaddedSvd {
    u: DMatrix<Complex64>,
    v: DMatrix<Complex64>,
    singular: Vec<f64>,
    rank: usize,
}

fn padded_svd(m: &CMatrix, tol: &Tolerances) -> Result<PaddedSvd> {
    if !m.is_finite() {
        return Err(Error::InvalidMatrix);
    }
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return Ok(PaddedSvd {
            u: DMatrix::zeros(rows, 0),
            v: DMatrix::identity(cols, cols),
            singular: vec![0.0; cols],
            rank: 0,
        });
    }
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m.inner());
        p
    } else {
        m.inner().clone()
    };
    let svd = SVD::new(padded, true, true);
    let u = svd.u.expect("u requested");
    let v = svd.v_t.expect("v_t requested").adjoint();
    let singular: Vec<f64> = svd.singular_values.iter().copied().collect();
    let sigma_max = singular.iter().copied().fold(0.0, f64::max);
    let cutoff = tol.rank_rel_tol_for(rows, cols) * sigma_max;
    let rank = if sigma_max == 0.0 {
        0
    } else {
        singular.iter().filter(|&&s| s > cutoff).count()
    };
    Ok(PaddedSvd { u, v, singular, rank })
}

impl PaddedSvd {
    /// Indices of singular triplets above / below the cutoff, in descending
    /// singular-value order (ties broken by index).
    fn split(&self) -> (Vec<usize>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.singular.len()).collect();
        order.sort_by(|&a, &b| self.singular[b].total_cmp(&self.singular[a]).then(a.cmp(&b)));
        let (hi, lo) = order.split_at(self.rank);
        (hi.to_vec(), lo.to_vec())
    }
}

fn select_columns(m: &DMatrix<Complex64>, rows: usize, idx: &[usize]) -> CMatrix {
    CMatrix::from_fn(rows, idx.len(), |i, j| m[(i, idx[j])])
}

/// Number of singular values above `rank_rel_tol · σ_max`.
pub fn numerical_rank(m: &CMatrix, tol: &Tolerances) -> Result<usize> {
    Ok(padded_svd(m, tol)?.rank)
}

/// Singular values of `m`, descending.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let svd = padded_svd(m, &Tolerances::default())?;
    let mut s = svd.singular;
    s.sort_by(|a, b| b.total_cmp(a));
    s.truncate(m.rows().min(m.cols()));
    Ok(s)
}

/// Orthonormal basis of the numerical null space of `m`.
pub fn kernel_basis(m: &CMatrix, tol: &Tolerances) -> Result<SubspaceBasis> {
    let svd = padded_svd(m, tol)?;
    let (_, lo) = svd.split();
    Ok(SubspaceBasis::from_columns(select_columns(&svd.v, m.cols(), &lo)))
}

/// Orthonormal basis of the numerical column space of `m`.
pub fn range_basis(m: &CMatrix, tol: &Tolerances) -> Result<SubspaceBasis> {
    let svd = padded_svd(m, tol)?;
    let (hi, _) = svd.split();
    Ok(SubspaceBasis::from_columns(select_columns(&svd.u, m.rows(), &hi)))
}

/// Orthonormal basis of `outer ∩ inner^⊥`, assuming `inner ⊆ outer`.
pub fn complement_within(outer: &SubspaceBasis, inner: &SubspaceBasis, tol: &Tolerances) -> Result<SubspaceBasis> {
    if outer.ambient_dim() != inner.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            outer.ambient_dim(),
            inner.ambient_dim()
        )));
    }
    if inner.dim() > outer.dim() {
        return Err(Error::NotNested {
            residual: f64::INFINITY,
            bound: tol.subspace_tol(),
        });
    }
    let residual = outer.projection_residual(inner.basis());
    let bound = tol.subspace_tol() * (1.0 + inner.dim() as f64);
    if residual > bound {
        return Err(Error::NotNested { residual, bound });
    }
    if inner.dim() == 0 {
        return Ok(outer.clone());
    }
    // Coordinates of `inner` in the `outer` basis have orthonormal columns;
    // the complement is the null space of their adjoint.
    let coords = &outer.basis().adjoint() * inner.basis();
    let svd = padded_svd(&coords.adjoint(), &Tolerances::default())?;
    let k = outer.dim();
    let mut order: Vec<usize> = (0..svd.singular.len()).collect();
    order.sort_by(|&a, &b| svd.singular[b].total_cmp(&svd.singular[a]).then(a.cmp(&b)));
    let comp = select_columns(&svd.v, k, &order[inner.dim()..]);
    Ok(SubspaceBasis::from_columns(outer.basis() * &comp))
}

/// `Bᴴ M B`, the compression of `m` to the subspace spanned by `b`.
pub fn compress(m: &CMatrix, b: &SubspaceBasis) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if b.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "basis of C^{} against {}x{} operator",
            b.ambient_dim(),
            m.rows(),
            m.cols()
        )));
    }
    Ok(&(&b.basis().adjoint() * m) * b.basis())
}

/// Complex Schur form `M = Q T Qᴴ`; returns `(Q, T)` with `T` upper triangular.
pub fn schur(m: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::InvalidMatrix);
    }
    if m.rows() == 0 {
        return Ok((CMatrix::zeros(0, 0), CMatrix::zeros(0, 0)));
    }
    let (q, t) = Schur::new(m.inner().clone()).unpack();
    Ok((CMatrix::from_inner(q)?, CMatrix::from_inner(t)?))
}

/// Eigenvalues with multiplicity, read off the diagonal of the Schur form.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    Ok(schur(m)?.1.diagonal())
}
