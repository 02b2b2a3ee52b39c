//! Joint spectrum and Słodkowski joint spectra of the two-dimensional
//! solvable Lie algebra spanned by `x`, `y` with `yx − xy = y`, acting on
//! `ℂⁿ`.
//!
//! Spectra are computed two ways: by reduction to single-operator spectra on
//! `Ker(y)` and `ℂⁿ/R(y)` ([`spectra`]), and by brute-force homology of the
//! Koszul-type complex at candidate points ([`oracle`]).

pub mod cli;
pub mod decomp;
pub mod error;
pub mod homology;
pub mod liepair;
pub mod numkit;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use liepair::LiePair;
pub use numkit::{CMatrix, SubspaceBasis, Tolerances};
