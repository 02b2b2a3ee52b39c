//! Spectra of a single square matrix `T`.
//!
//! In finite dimension every subspace is closed, so:
//! - `λ ∉ Π(T)` iff `T − λ` is injective (bounded below = injective);
//! - `λ ∉ ΠC(T)` iff `T − λ` is surjective;
//! - for square `T` both conditions fail exactly at the eigenvalues.
//!
//! This is the only place the finite-dimensional collapse is used. The
//! predicates are still evaluated separately so each set is produced by the
//! property that defines it. They run on the Schur form `T = QRQᴴ`, which
//! is unitarily similar to `T`: there every eigenvalue sits exactly on the
//! diagonal of `R`, and `R − R_ii` has an exact zero pivot rather than a
//! rounding-sized one.

use num_complex::Complex64;

use super::SpectrumSet;
use crate::error::Result;
use crate::numkit::{numerical_rank, schur, CMatrix, Tolerances};

pub fn is_injective(t: &CMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(numerical_rank(t, tol)? == t.cols())
}

pub fn is_surjective(t: &CMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(numerical_rank(t, tol)? == t.rows())
}

/// Square matrix together with its Schur factor.
pub struct SingleOperator {
    triangular: CMatrix,
}

impl SingleOperator {
    pub fn new(t: &CMatrix) -> Result<Self> {
        let (_, triangular) = schur(t)?;
        Ok(Self { triangular })
    }

    pub fn dim(&self) -> usize {
        self.triangular.rows()
    }

    /// Eigenvalues with multiplicity.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.triangular.diagonal()
    }

    /// `T − λ` in the Schur basis.
    pub fn shifted(&self, lambda: Complex64) -> CMatrix {
        self.triangular.shifted(-lambda)
    }

    /// `λ`, replaced by the nearest diagonal entry of the Schur factor when
    /// one lies within `match_tol`. Points closer than `match_tol` are the
    /// same point everywhere else, and a computed eigenvalue of a related
    /// matrix is only accurate to rounding, which can leave `T − λ` with a
    /// smallest singular value just above the rank cutoff.
    pub fn snap(&self, lambda: Complex64, match_tol: f64) -> Complex64 {
        self.eigenvalues()
            .into_iter()
            .map(|z| ((z - lambda).norm(), z))
            .filter(|(d, _)| *d <= match_tol)
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map_or(lambda, |(_, z)| z)
    }

    pub fn is_injective_at(&self, lambda: Complex64, tol: &Tolerances) -> Result<bool> {
        is_injective(&self.shifted(self.snap(lambda, tol.match_tol)), tol)
    }

    pub fn is_surjective_at(&self, lambda: Complex64, tol: &Tolerances) -> Result<bool> {
        is_surjective(&self.shifted(self.snap(lambda, tol.match_tol)), tol)
    }

    /// `Sp(T)`: points where `T − λ` is not invertible.
    pub fn spectrum(&self, tol: &Tolerances) -> Result<SpectrumSet> {
        self.filter(tol, |op, z| {
            Ok(!(op.is_injective_at(z, tol)? && op.is_surjective_at(z, tol)?))
        })
    }

    /// `Π(T)`: points where `T − λ` is not bounded below.
    pub fn approx_point_spectrum(&self, tol: &Tolerances) -> Result<SpectrumSet> {
        self.filter(tol, |op, z| Ok(!op.is_injective_at(z, tol)?))
    }

    /// `ΠC(T) = Π(T*)`: points where `T − λ` is not surjective.
    pub fn approx_compression_spectrum(&self, tol: &Tolerances) -> Result<SpectrumSet> {
        self.filter(tol, |op, z| Ok(!op.is_surjective_at(z, tol)?))
    }

    fn filter(&self, tol: &Tolerances, mut keep: impl FnMut(&Self, Complex64) -> Result<bool>) -> Result<SpectrumSet> {
        let mut kept = Vec::new();
        for z in self.eigenvalues() {
            if keep(self, z)? {
                kept.push(z);
            }
        }
        Ok(SpectrumSet::from_points(kept, tol.match_tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn predicates_on_rectangular_maps() {
        let t = Tolerances::default();
        let wide = CMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        assert!(is_surjective(&wide, &t).unwrap());
        assert!(!is_injective(&wide, &t).unwrap());
        let tall = wide.adjoint();
        assert!(is_injective(&tall, &t).unwrap());
        assert!(!is_surjective(&tall, &t).unwrap());
        let empty = CMatrix::zeros(0, 0);
        assert!(is_injective(&empty, &t).unwrap() && is_surjective(&empty, &t).unwrap());
    }

    #[test]
    fn all_three_sets_are_the_eigenvalues() {
        let t = Tolerances::default();
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(3.0, 1.0), c(0.0, 0.0)],
            vec![c(0.5, 0.0), c(-2.0, 1.0), c(1.0, 0.0)],
            vec![c(0.0, 2.0), c(0.0, 0.0), c(0.25, 0.0)],
        ])
        .unwrap();
        let op = SingleOperator::new(&m).unwrap();
        let eig = SpectrumSet::from_points(op.eigenvalues(), 1e-8);
        assert_eq!(eig.len(), 3);
        for s in [
            op.spectrum(&t).unwrap(),
            op.approx_point_spectrum(&t).unwrap(),
            op.approx_compression_spectrum(&t).unwrap(),
        ] {
            assert_eq!(s, eig);
        }
        // Off the spectrum T − λ is invertible.
        assert!(op.is_injective_at(c(10.0, 0.0), &t).unwrap());
        // A perturbed eigenvalue is identified with the exact one.
        let z = op.eigenvalues()[0] + c(1e-12, 0.0);
        assert!(!op.is_injective_at(z, &t).unwrap() && !op.is_surjective_at(z, &t).unwrap());
        assert_eq!(op.snap(c(10.0, 0.0), t.match_tol), c(10.0, 0.0));
    }

    #[test]
    fn jordan_block() {
        let t = Tolerances::default();
        let j = CMatrix::from_real_rows(&[&[2.0, 1.0, 0.0], &[0.0, 2.0, 1.0], &[0.0, 0.0, 2.0]]).unwrap();
        let op = SingleOperator::new(&j).unwrap();
        let s = op.approx_point_spectrum(&t).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(c(2.0, 0.0)));
    }

    #[test]
    fn empty_operator_has_empty_spectrum() {
        let op = SingleOperator::new(&CMatrix::zeros(0, 0)).unwrap();
        assert!(op.spectrum(&Tolerances::default()).unwrap().is_empty());
    }
}
