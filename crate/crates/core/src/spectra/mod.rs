//! Joint spectra through single-operator spectra.
//!
//! With `A = x|Ker(y)` and `B = x̄` on `ℂⁿ/R(y)`:
//!
//! | set   | formula                     |
//! |-------|-----------------------------|
//! | Sp    | `Sp(A − 1) ∪ Sp(B)`         |
//! | σδ,0  | `ΠC(B)`                     |
//! | σδ,1  | `Sp(B) ∪ ΠC(A − 1)`         |
//! | σδ,2  | `Sp`                        |
//! | σπ,0  | `Sp`                        |
//! | σπ,1  | `Sp(A − 1) ∪ Π(B)`          |
//! | σπ,2  | `Π(A − 1)`                  |
//!
//! When `y² = 0` the joint spectrum also follows from the blocks `x11` (on
//! `R(y)`) and `x22` (on `M`): with `S₁ = Sp(x11) − 1`, `S₂ = Sp(x22)`, it is
//! `S₁ ∪ (S₁ + 2) ∪ S₂ ∪ (S₂ − 1)`.

mod set;
pub mod single;

pub use set::{set_compare, MatchReport, SpectrumSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decomp::{decompose, is_y2_zero, y2_bound, y2_norm, PairDecomposition};
use crate::error::{Error, Result};
use crate::liepair::LiePair;
use crate::numkit::{schur, Tolerances};
use single::SingleOperator;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which computation produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Theorem,
    Y2zero,
    Triangular,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Theorem => "theorem",
            Method::Y2zero => "y2zero",
            Method::Triangular => "triangular",
            Method::Oracle => "oracle",
        }
    }
}

/// The joint spectrum and the six Słodkowski spectra, by their `λ` coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectraReport {
    pub sp: SpectrumSet,
    pub sigma_delta_0: SpectrumSet,
    pub sigma_delta_1: SpectrumSet,
    pub sigma_delta_2: SpectrumSet,
    pub sigma_pi_0: SpectrumSet,
    pub sigma_pi_1: SpectrumSet,
    pub sigma_pi_2: SpectrumSet,
    pub method: Method,
    pub tolerances: Tolerances,
}

pub const SET_NAMES: [&str; 7] = [
    "sp",
    "sigma_delta_0",
    "sigma_delta_1",
    "sigma_delta_2",
    "sigma_pi_0",
    "sigma_pi_1",
    "sigma_pi_2",
];

impl SpectraReport {
    /// The seven sets in [`SET_NAMES`] order.
    pub fn sets(&self) -> [(&'static str, &SpectrumSet); 7] {
        [
            (SET_NAMES[0], &self.sp),
            (SET_NAMES[1], &self.sigma_delta_0),
            (SET_NAMES[2], &self.sigma_delta_1),
            (SET_NAMES[3], &self.sigma_delta_2),
            (SET_NAMES[4], &self.sigma_pi_0),
            (SET_NAMES[5], &self.sigma_pi_1),
            (SET_NAMES[6], &self.sigma_pi_2),
        ]
    }

    /// Violations of `σδ,2 = σπ,0 = Sp` and of the inclusion chains
    /// `σδ,0 ⊆ σδ,1 ⊆ σδ,2`, `σπ,2 ⊆ σπ,1 ⊆ σπ,0`. Empty when all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let tol = self.tolerances.match_tol;
        let mut out = Vec::new();
        for (name, s) in [("sigma_delta_2", &self.sigma_delta_2), ("sigma_pi_0", &self.sigma_pi_0)] {
            if !set_compare(s, &self.sp, tol).matched {
                out.push(format!("{name} != sp"));
            }
        }
        let chains = [
            (
                "sigma_delta_0",
                &self.sigma_delta_0,
                "sigma_delta_1",
                &self.sigma_delta_1,
            ),
            (
                "sigma_delta_1",
                &self.sigma_delta_1,
                "sigma_delta_2",
                &self.sigma_delta_2,
            ),
            ("sigma_pi_2", &self.sigma_pi_2, "sigma_pi_1", &self.sigma_pi_1),
            ("sigma_pi_1", &self.sigma_pi_1, "sigma_pi_0", &self.sigma_pi_0),
        ];
        for (a, sa, b, sb) in chains {
            if !sa.is_subset_of(sb) {
                out.push(format!("{a} not contained in {b}"));
            }
        }
        out
    }

    /// Per-set comparison with another report.
    pub fn compare(&self, other: &SpectraReport, match_tol: f64) -> Vec<(&'static str, MatchReport)> {
        self.sets()
            .iter()
            .zip(other.sets().iter())
            .map(|((name, a), (_, b))| (*name, set_compare(a, b, match_tol)))
            .collect()
    }

    pub fn translated(&self, c: Complex64) -> SpectraReport {
        SpectraReport {
            sp: self.sp.translated(c),
            sigma_delta_0: self.sigma_delta_0.translated(c),
            sigma_delta_1: self.sigma_delta_1.translated(c),
            sigma_delta_2: self.sigma_delta_2.translated(c),
            sigma_pi_0: self.sigma_pi_0.translated(c),
            sigma_pi_1: self.sigma_pi_1.translated(c),
            sigma_pi_2: self.sigma_pi_2.translated(c),
            method: self.method,
            tolerances: self.tolerances,
        }
    }
}

/// `A − 1` with `A = x|Ker(y)`, and `B = x̄`, as single operators.
struct ReducedOperators {
    ker_minus_one: SingleOperator,
    quotient: SingleOperator,
}

impl ReducedOperators {
    fn new(d: &PairDecomposition) -> Result<Self> {
        Ok(Self {
            ker_minus_one: SingleOperator::new(&d.x_on_ker.shifted(-ONE))?,
            quotient: SingleOperator::new(&d.x_bar)?,
        })
    }
}

/// `Sp = Sp(x|Ker(y) − 1) ∪ Sp(x̄)`.
pub fn sp_joint(p: &LiePair, tol: &Tolerances) -> Result<SpectrumSet> {
    let ops = ReducedOperators::new(&decompose(p, tol)?)?;
    Ok(ops.ker_minus_one.spectrum(tol)?.union(&ops.quotient.spectrum(tol)?))
}

pub fn slodkowski_spectra(p: &LiePair, tol: &Tolerances) -> Result<SpectraReport> {
    slodkowski_from_decomposition(&decompose(p, tol)?, tol)
}

pub fn slodkowski_from_decomposition(d: &PairDecomposition, tol: &Tolerances) -> Result<SpectraReport> {
    let ops = ReducedOperators::new(d)?;
    let a = &ops.ker_minus_one;
    let b = &ops.quotient;
    let sp = a.spectrum(tol)?.union(&b.spectrum(tol)?);
    Ok(SpectraReport {
        sigma_delta_0: b.approx_compression_spectrum(tol)?,
        sigma_delta_1: b.spectrum(tol)?.union(&a.approx_compression_spectrum(tol)?),
        sigma_delta_2: sp.clone(),
        sigma_pi_0: sp.clone(),
        sigma_pi_1: a.spectrum(tol)?.union(&b.approx_point_spectrum(tol)?),
        sigma_pi_2: a.approx_point_spectrum(tol)?,
        sp,
        method: Method::Theorem,
        tolerances: *tol,
    })
}

fn require_y2_zero(p: &LiePair, tol: &Tolerances) -> Result<()> {
    if is_y2_zero(p, tol) {
        Ok(())
    } else {
        Err(Error::NotY2Zero {
            norm: y2_norm(p),
            bound: y2_bound(p, tol),
        })
    }
}

/// `S₁ ∪ (S₁ + 2) ∪ S₂ ∪ (S₂ − 1)` with `S₁ = Sp(x11) − 1`, `S₂ = Sp(x22)`.
pub fn sp_y2zero(p: &LiePair, tol: &Tolerances) -> Result<SpectrumSet> {
    require_y2_zero(p, tol)?;
    let d = decompose(p, tol)?;
    let blocks = d.blocks.as_ref().expect("blocks exist when y^2 = 0");
    let s1 = SingleOperator::new(&blocks.x11)?.spectrum(tol)?.translated(-ONE);
    let s2 = SingleOperator::new(&blocks.x22)?.spectrum(tol)?;
    Ok(s1
        .union(&s1.translated(2.0 * ONE))
        .union(&s2)
        .union(&s2.translated(-ONE)))
}

/// Diagonal read-off for `y² = 0`: in a basis of `Ker(y)` whose first `r`
/// vectors span `R(y)` and in which `x|Ker(y)` is upper triangular with
/// diagonal `λ₁ … λ_k`, the joint spectrum is
/// `{λᵢ − 1 : i ≤ k} ∪ {λᵢ : r < i ≤ k} ∪ {λᵢ + 1 : i ≤ r}`.
///
/// The basis is never assembled; `x11` and `x22` are triangularized
/// separately, which yields the same diagonal.
pub fn sp_triangular(p: &LiePair, tol: &Tolerances) -> Result<SpectrumSet> {
    require_y2_zero(p, tol)?;
    let d = decompose(p, tol)?;
    let blocks = d.blocks.as_ref().expect("blocks exist when y^2 = 0");
    let r = blocks.x11.rows();
    let mut diagonal = schur(&blocks.x11)?.1.diagonal();
    diagonal.extend(schur(&blocks.x22)?.1.diagonal());
    let points = diagonal
        .iter()
        .map(|&l| l - ONE)
        .chain(diagonal[r..].iter().copied())
        .chain(diagonal[..r].iter().map(|&l| l + ONE));
    Ok(SpectrumSet::from_points(points, tol.match_tol))
}
