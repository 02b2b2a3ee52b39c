//! Invariant-subspace scaffolding for a pair: bases of `Ker(y)`, `R(y)`,
//! `R(y)^⊥`, `Ker(y)^⊥` and the compressed operators built on them.
//!
//! The quotient operator `x̄` on `ℂⁿ/R(y)` is represented by the compression
//! of `x` to `R(y)^⊥`. Because `R(y)` is `x`-invariant, `x` is block upper
//! triangular in `R(y) ⊕ R(y)^⊥`, and the `(2,2)` block is similar to the
//! quotient map: `[v] ↦ [xv]` on cosets, with `R(y)^⊥` as the set of coset
//! representatives. No coset arithmetic is needed.
//!
//! When `y² = 0` the finer splitting `R(y) ⊕ M ⊕ Ker(y)^⊥` with
//! `M = Ker(y) ∩ R(y)^⊥` is also produced, together with the blocks of `x`
//! in that order.

use crate::error::Result;
use crate::liepair::LiePair;
use crate::numkit::{complement_within, compress, kernel_basis, range_basis, CMatrix, SubspaceBasis, Tolerances};

/// Blocks of `x` in the orthonormal splitting `R(y) ⊕ M ⊕ Ker(y)^⊥`.
#[derive(Clone, Debug)]
pub struct Y2ZeroBlocks {
    pub m_space: SubspaceBasis,
    pub x11: CMatrix,
    pub x12: CMatrix,
    pub x13: CMatrix,
    pub x22: CMatrix,
    pub x23: CMatrix,
    pub x33: CMatrix,
    /// Largest entry of the strictly-lower blocks of `x` in this basis.
    pub lower_residual: f64,
}

#[derive(Clone, Debug)]
pub struct PairDecomposition {
    pub ker_y: SubspaceBasis,
    pub ran_y: SubspaceBasis,
    pub ran_y_perp: SubspaceBasis,
    pub ker_y_perp: SubspaceBasis,
    /// `x` compressed to `Ker(y)`.
    pub x_on_ker: CMatrix,
    /// `x` compressed to `R(y)^⊥`; stands for `x̄` on `ℂⁿ/R(y)`.
    pub x_bar: CMatrix,
    /// `y` as a map `Ker(y)^⊥ → R(y)`, square and invertible.
    pub y_bar: CMatrix,
    /// Present only when `y² = 0`.
    pub blocks: Option<Y2ZeroBlocks>,
}

/// True when `|y²| ≤ residual_tol · max(1, |y|)²`.
pub fn is_y2_zero(p: &LiePair, tol: &Tolerances) -> bool {
    y2_norm(p) <= y2_bound(p, tol)
}

pub(crate) fn y2_norm(p: &LiePair) -> f64 {
    (p.y() * p.y()).norm()
}

pub(crate) fn y2_bound(p: &LiePair, tol: &Tolerances) -> f64 {
    tol.residual_tol_for(p.x_norm(), p.y_norm()) * p.y_norm().max(1.0).powi(2)
}

pub fn decompose(p: &LiePair, tol: &Tolerances) -> Result<PairDecomposition> {
    let n = p.n();
    let full = SubspaceBasis::full(n);
    let ker_y = kernel_basis(p.y(), tol)?;
    let ran_y = range_basis(p.y(), tol)?;
    let ran_y_perp = complement_within(&full, &ran_y, tol)?;
    let ker_y_perp = complement_within(&full, &ker_y, tol)?;

    let x_on_ker = compress(p.x(), &ker_y)?;
    let x_bar = compress(p.x(), &ran_y_perp)?;
    let y_bar = &(&ran_y.basis().adjoint() * p.y()) * ker_y_perp.basis();

    let blocks = if is_y2_zero(p, tol) {
        let m_space = complement_within(&ker_y, &ran_y, tol)?;
        let w = SubspaceBasis::concat(&[&ran_y, &m_space, &ker_y_perp]);
        let xw = &(&w.adjoint() * p.x()) * &w;
        let (r, m) = (ran_y.dim(), m_space.dim());
        let k = ker_y_perp.dim();
        let lower_residual = [xw.block(r, 0, m, r), xw.block(r + m, 0, k, r), xw.block(r + m, r, k, m)]
            .iter()
            .map(CMatrix::norm)
            .fold(0.0, f64::max);
        Some(Y2ZeroBlocks {
            x11: xw.block(0, 0, r, r),
            x12: xw.block(0, r, r, m),
            x13: xw.block(0, r + m, r, k),
            x22: xw.block(r, r, m, m),
            x23: xw.block(r, r + m, m, k),
            x33: xw.block(r + m, r + m, k, k),
            m_space,
            lower_residual,
        })
    } else {
        None
    };

    Ok(PairDecomposition {
        ker_y,
        ran_y,
        ran_y_perp,
        ker_y_perp,
        x_on_ker,
        x_bar,
        y_bar,
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    /// `|(I − P_ker)·x·B_ker|`.
    pub ker_residual: f64,
    /// `|(I − P_ran)·x·B_ran|`.
    pub ran_residual: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Measures how far `Ker(y)` and `R(y)` are from being `x`-invariant.
pub fn verify_invariance(p: &LiePair, d: &PairDecomposition, tol: &Tolerances) -> InvarianceReport {
    let ker_residual = d.ker_y.projection_residual(&(p.x() * d.ker_y.basis()));
    let ran_residual = d.ran_y.projection_residual(&(p.x() * d.ran_y.basis()));
    let bound = tol.residual_tol_for(p.x_norm(), p.y_norm()) * (1.0 + p.x_norm());
    InvarianceReport {
        ker_residual,
        ran_residual,
        bound,
        pass: ker_residual <= bound && ran_residual <= bound,
    }
}
