//! Brute-force spectra straight from the homology of the complex.
//!
//! Every spectrum point is an eigenvalue of `x|Ker(y) − 1` or of `x̄`, so a
//! finite candidate list suffices; the sweep evaluates Betti numbers at each
//! candidate and applies the set definitions directly:
//!
//! - `Sp   = {λ : h₀ + h₁ + h₂ > 0}`
//! - `σδ,k = {λ : h_p > 0 for some p ≤ k}`
//! - `σπ,k = {λ : h_p > 0 for some p ≥ k}`
//!
//! The range-closedness clause in the definition of `σπ,k` is dropped: every
//! subspace of a finite-dimensional space is closed.

pub mod exact;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{decompose, PairDecomposition};
use crate::error::Result;
use crate::homology::{homology_dims, HomologyProfile};
use crate::liepair::LiePair;
use crate::numkit::{eigenvalues, Tolerances};
use crate::spectra::single::SingleOperator;
use crate::spectra::{Method, SpectraReport, SpectrumSet};
use exact::{check_exact_relation, exact_homology, ExactMatrix, GaussianRational};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const PROBE_SEED: u64 = 0x0a11_ce5e;
pub const PROBE_COUNT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    EigenvalueDerived,
    Shifted,
    Probe,
    User,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub lambda: Complex64,
    pub provenance: Provenance,
}

/// Points at which the oracle evaluates homology, deduplicated at `match_tol`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CandidateSet {
    points: Vec<Candidate>,
    match_tol: f64,
}

impl CandidateSet {
    pub fn new(match_tol: f64) -> Self {
        Self {
            points: Vec::new(),
            match_tol,
        }
    }

    /// Adds `lambda` unless a candidate within `match_tol` already exists.
    pub fn push(&mut self, lambda: Complex64, provenance: Provenance) {
        if !self.points.iter().any(|c| (c.lambda - lambda).norm() <= self.match_tol) {
            self.points.push(Candidate { lambda, provenance });
        }
    }

    pub fn points(&self) -> &[Candidate] {
        &self.points
    }

    pub fn lambdas(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().map(|c| c.lambda)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Radius outside which the complex is exact: `|x| + |y| + 2`.
pub fn exactness_radius(p: &LiePair) -> f64 {
    p.x_norm() + p.y_norm() + 2.0
}

/// Eigenvalue-derived candidates (of `x`, `x ± 1`, `x|Ker(y) − 1`, `x̄`) plus
/// seeded probes outside the exactness radius.
pub fn candidates(p: &LiePair, tol: &Tolerances) -> Result<CandidateSet> {
    let d = decompose(p, tol)?;
    candidates_with(p, &d, tol)
}

pub fn candidates_with(p: &LiePair, d: &PairDecomposition, tol: &Tolerances) -> Result<CandidateSet> {
    let mut set = CandidateSet::new(tol.match_tol);
    let ex = eigenvalues(p.x())?;
    for &z in &ex {
        set.push(z, Provenance::EigenvalueDerived);
    }
    for &z in &ex {
        set.push(z - ONE, Provenance::Shifted);
        set.push(z + ONE, Provenance::Shifted);
    }
    for z in eigenvalues(&d.x_on_ker)? {
        set.push(z - ONE, Provenance::EigenvalueDerived);
    }
    for z in eigenvalues(&d.x_bar)? {
        set.push(z, Provenance::EigenvalueDerived);
    }
    let radius = exactness_radius(p);
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    for _ in 0..PROBE_COUNT {
        let r = radius * rng.gen_range(1.05..2.0);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        set.push(Complex64::from_polar(r, theta), Provenance::Probe);
    }
    Ok(set)
}

/// Homology profile at every candidate, in candidate order.
pub fn brute_profiles(p: &LiePair, cands: &CandidateSet, tol: &Tolerances) -> Result<Vec<HomologyProfile>> {
    cands.lambdas().map(|l| homology_dims(p, l, tol)).collect()
}

/// Applies the set definitions to Betti-number flags `[h0 > 0, h1 > 0, h2 > 0]`.
pub fn report_from_flags(
    flags: impl IntoIterator<Item = (Complex64, [bool; 3])>,
    method: Method,
    tol: &Tolerances,
) -> SpectraReport {
    let flags: Vec<(Complex64, [bool; 3])> = flags.into_iter().collect();
    let collect = |pred: &dyn Fn(&[bool; 3]) -> bool| {
        SpectrumSet::from_points(flags.iter().filter(|(_, f)| pred(f)).map(|(l, _)| *l), tol.match_tol)
    };
    let delta = |k: usize| collect(&move |f: &[bool; 3]| f[..=k].iter().any(|&b| b));
    let pi = |k: usize| collect(&move |f: &[bool; 3]| f[k..].iter().any(|&b| b));
    SpectraReport {
        sp: collect(&|f| f.iter().any(|&b| b)),
        sigma_delta_0: delta(0),
        sigma_delta_1: delta(1),
        sigma_delta_2: delta(2),
        sigma_pi_0: pi(0),
        sigma_pi_1: pi(1),
        sigma_pi_2: pi(2),
        method,
        tolerances: *tol,
    }
}

pub fn flags_of(h: &HomologyProfile) -> [bool; 3] {
    [h.h0 > 0, h.h1 > 0, h.h2 > 0]
}

pub fn brute_spectra(p: &LiePair, cands: &CandidateSet, tol: &Tolerances) -> Result<SpectraReport> {
    let profiles = brute_profiles(p, cands, tol)?;
    Ok(report_from_flags(
        profiles.iter().map(|h| (h.lambda, flags_of(h))),
        Method::Oracle,
        tol,
    ))
}

/// Exact Betti numbers at one Gaussian-rational point.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactProfile {
    pub lambda: GaussianRational,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

impl ExactProfile {
    pub fn flags(&self) -> [bool; 3] {
        [self.h0 > 0, self.h1 > 0, self.h2 > 0]
    }
}

pub fn exact_profiles(x: &ExactMatrix, y: &ExactMatrix, cands: &[GaussianRational]) -> Result<Vec<ExactProfile>> {
    check_exact_relation(x, y)?;
    Ok(cands
        .iter()
        .map(|l| {
            let (h0, h1, h2) = exact_homology(x, y, l);
            ExactProfile {
                lambda: l.clone(),
                h0,
                h1,
                h2,
            }
        })
        .collect())
}

/// Same semantics as [`brute_spectra`], with exact ranks. The report's
/// tolerances are all zero: points are merged only when identical.
pub fn exact_brute_spectra(x: &ExactMatrix, y: &ExactMatrix, cands: &[GaussianRational]) -> Result<SpectraReport> {
    let profiles = exact_profiles(x, y, cands)?;
    let tol = Tolerances::default()
        .with_match_tol(0.0)
        .with_rank_rel_tol(0.0)
        .with_residual_tol(0.0);
    Ok(report_from_flags(
        profiles.iter().map(|h| (h.lambda.to_complex(), h.flags())),
        Method::Oracle,
        &tol,
    ))
}

/// One biconditional "homology vanishes ⇔ operator condition".
#[derive(Clone, Debug, PartialEq)]
pub struct ClauseCheck {
    pub clause: &'static str,
    pub homology_vanishes: bool,
    pub operator_condition: bool,
}

impl ClauseCheck {
    pub fn pass(&self) -> bool {
        self.homology_vanishes == self.operator_condition
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport {
    pub lambda: Complex64,
    pub profile: HomologyProfile,
    /// `h0 = 0 ⇔ x̄ − λ surjective`.
    pub h0_clause: ClauseCheck,
    /// `h2 = 0 ⇔ x|Ker(y) − 1 − λ injective`.
    pub h2_clause: ClauseCheck,
    /// `h1 = 0 ⇔ x|Ker(y) − 1 − λ surjective and x̄ − λ injective`.
    pub h1_clause: ClauseCheck,
    /// The variant with the shift on the wrong operator, `h1 = 0 ⇔ x̄ − 1 − λ injective and
    /// x|Ker(y) − λ − 1 surjective`; kept for comparison only.
    pub h1_shifted_variant: ClauseCheck,
}

impl VanishingReport {
    pub fn pass(&self) -> bool {
        self.h0_clause.pass() && self.h1_clause.pass() && self.h2_clause.pass()
    }
}

pub fn verify_vanishing(p: &LiePair, lambda: Complex64, tol: &Tolerances) -> Result<VanishingReport> {
    verify_vanishing_with(p, &decompose(p, tol)?, lambda, tol)
}

/// The operator side is evaluated on Schur factors, with `λ` identified with
/// an eigenvalue closer than `match_tol` (see [`SingleOperator::snap`]).
pub fn verify_vanishing_with(
    p: &LiePair,
    d: &PairDecomposition,
    lambda: Complex64,
    tol: &Tolerances,
) -> Result<VanishingReport> {
    let profile = homology_dims(p, lambda, tol)?;
    let ker = SingleOperator::new(&d.x_on_ker)?;
    let quot = SingleOperator::new(&d.x_bar)?;
    let ker_injective = ker.is_injective_at(lambda + ONE, tol)?;
    let ker_surjective = ker.is_surjective_at(lambda + ONE, tol)?;
    let quot_injective = quot.is_injective_at(lambda, tol)?;

    let h0_clause = ClauseCheck {
        clause: "h0 = 0 <=> xbar - lambda surjective",
        homology_vanishes: profile.h0 == 0,
        operator_condition: quot.is_surjective_at(lambda, tol)?,
    };
    let h2_clause = ClauseCheck {
        clause: "h2 = 0 <=> x|ker(y) - 1 - lambda injective",
        homology_vanishes: profile.h2 == 0,
        operator_condition: ker_injective,
    };
    let h1_clause = ClauseCheck {
        clause: "h1 = 0 <=> x|ker(y) - 1 - lambda surjective and xbar - lambda injective",
        homology_vanishes: profile.h1 == 0,
        operator_condition: ker_surjective && quot_injective,
    };
    let h1_shifted_variant = ClauseCheck {
        clause: "h1 = 0 <=> xbar - 1 - lambda injective and x|ker(y) - lambda - 1 surjective",
        homology_vanishes: profile.h1 == 0,
        operator_condition: quot.is_injective_at(lambda + ONE, tol)? && ker_surjective,
    };
    Ok(VanishingReport {
        lambda,
        profile,
        h0_clause,
        h2_clause,
        h1_clause,
        h1_shifted_variant,
    })
}
