//! The complex `0 → H →d₁ H⊕H →d₀ H → 0` at a point `λ`:
//!
//! ```text
//! d₀(λ) = [ y | x − λ ]            (n × 2n)
//! d₁(λ) = [ −(x − 1 − λ) ; y ]     (2n × n)
//! ```
//!
//! `d₀d₁ = −y(x−1−λ) + (x−λ)y = −(yx − xy − y)`, which vanishes exactly by the
//! bracket relation. Betti numbers come from the two numerical ranks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::liepair::LiePair;
use crate::numkit::{numerical_rank, CMatrix, Tolerances};

/// Homology dimensions of the complex at one point `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyProfile {
    pub lambda: Complex64,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
    pub chain_residual: f64,
}

impl HomologyProfile {
    pub fn is_exact(&self) -> bool {
        self.h0 == 0 && self.h1 == 0 && self.h2 == 0
    }

    pub fn betti(&self, degree: usize) -> usize {
        match degree {
            0 => self.h0,
            1 => self.h1,
            2 => self.h2,
            _ => 0,
        }
    }
}

pub fn build_d0(p: &LiePair, lambda: Complex64) -> CMatrix {
    CMatrix::hstack(p.y(), &p.x().shifted(-lambda))
}

pub fn build_d1(p: &LiePair, lambda: Complex64) -> CMatrix {
    let top = -&p.x().shifted(-(lambda + 1.0));
    CMatrix::vstack(&top, p.y())
}

/// Bound on `|d₀d₁|` used by [`homology_dims`].
pub fn chain_bound(p: &LiePair, lambda: Complex64, tol: &Tolerances) -> f64 {
    let (xn, yn) = (p.x_norm(), p.y_norm());
    tol.residual_tol_for(xn, yn) * (1.0 + xn + yn + lambda.norm())
}

pub fn homology_dims(p: &LiePair, lambda: Complex64, tol: &Tolerances) -> Result<HomologyProfile> {
    let n = p.n();
    let d0 = build_d0(p, lambda);
    let d1 = build_d1(p, lambda);
    let chain_residual = (&d0 * &d1).norm();
    let bound = chain_bound(p, lambda, tol);
    if chain_residual > bound {
        return Err(Error::ToleranceBreakdown(format!(
            "|d0 d1| = {chain_residual:e} exceeds {bound:e} at lambda = {lambda}"
        )));
    }
    let rank_d0 = numerical_rank(&d0, tol)?;
    let rank_d1 = numerical_rank(&d1, tol)?;
    let h1 = (2 * n) as i64 - rank_d0 as i64 - rank_d1 as i64;
    if h1 < 0 {
        return Err(Error::ToleranceBreakdown(format!(
            "rank d0 = {rank_d0} and rank d1 = {rank_d1} exceed 2n = {} at lambda = {lambda}",
            2 * n
        )));
    }
    Ok(HomologyProfile {
        lambda,
        h0: n - rank_d0,
        h1: h1 as usize,
        h2: n - rank_d1,
        rank_d0,
        rank_d1,
        chain_residual,
    })
}
