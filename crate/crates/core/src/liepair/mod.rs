//! The pair `(x, y)` with `y·x − x·y = y`.
//!
//! Bracket orientation is fixed once here: in operator composition the
//! relation reads `yx − xy = y`. Nothing else in the crate deals with the
//! opposite-algebra convention.

mod generate;
mod io;

pub use generate::{generate_chain, generate_chain_with, generate_y2zero, WeightMode, Y2ZeroParams};
pub use io::{InstanceFile, SCHEMA_VERSION};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkit::{CMatrix, Tolerances};

/// A validated pair of `n × n` matrices satisfying `yx − xy = y` with `y` nilpotent.
#[derive(Clone, Debug)]
pub struct LiePair {
    x: CMatrix,
    y: CMatrix,
    nilpotency_index: usize,
    relation_residual: f64,
}

/// `|yx − xy − y|`.
pub fn relation_residual(x: &CMatrix, y: &CMatrix) -> f64 {
    let bracket = &(y * x) - &(x * y);
    (&bracket - y).norm()
}

/// Least `p` with `|yᵖ| ≤ bound · |y|ᵖ⁻¹`, given `powers[k] = yᵏ⁺¹`.
fn nilpotency_index(powers: &[CMatrix], bound: f64, y_norm: f64) -> Option<usize> {
    powers
        .iter()
        .enumerate()
        .find(|(k, yk)| yk.norm() <= bound * y_norm.powi(*k as i32))
        .map(|(k, _)| k + 1)
}

impl LiePair {
    /// Checks the bracket relation, nilpotency of `y`, and the power identities
    /// `k·yᵏ = yᵏx − xyᵏ` for `1 ≤ k ≤ n`.
    pub fn validate(x: CMatrix, y: CMatrix, tol: &Tolerances) -> Result<Self> {
        for m in [&x, &y] {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            if !m.is_finite() {
                return Err(Error::InvalidMatrix);
            }
        }
        if x.rows() != y.rows() {
            return Err(Error::DimensionMismatch(format!(
                "x is {}x{}, y is {}x{}",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols()
            )));
        }
        let n = x.rows();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty operators".into()));
        }
        let (x_norm, y_norm) = (x.norm(), y.norm());
        let bound = tol.residual_tol_for(x_norm, y_norm);

        let residual = relation_residual(&x, &y);
        if residual > bound {
            return Err(Error::RelationViolated {
                what: "bracket".into(),
                residual,
                bound,
            });
        }

        // powers[k] = y^(k+1)
        let mut powers = Vec::with_capacity(n);
        let mut acc = y.clone();
        for _ in 0..n {
            let next = &acc * &y;
            powers.push(acc);
            acc = next;
        }

        let Some(nilpotency_index) = nilpotency_index(&powers, bound, y_norm) else {
            return Err(Error::NotNilpotent {
                norm: powers[n - 1].norm(),
                bound: bound * y_norm.powi(n as i32 - 1),
            });
        };

        for (k, yk) in powers.iter().enumerate() {
            let p = k + 1;
            let commutator = &(yk * &x) - &(&x * yk);
            let residual = (&yk.scaled(Complex64::new(p as f64, 0.0)) - &commutator).norm();
            let power_bound = 10.0 * p as f64 * bound * x_norm.max(1.0) * y_norm.powi(p as i32 - 1);
            if residual > power_bound {
                return Err(Error::RelationViolated {
                    what: format!("power identity k={p}"),
                    residual,
                    bound: power_bound,
                });
            }
        }

        Ok(Self {
            x,
            y,
            nilpotency_index,
            relation_residual: residual,
        })
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn x(&self) -> &CMatrix {
        &self.x
    }

    pub fn y(&self) -> &CMatrix {
        &self.y
    }

    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn relation_residual(&self) -> f64 {
        self.relation_residual
    }

    pub fn x_norm(&self) -> f64 {
        self.x.norm()
    }

    pub fn y_norm(&self) -> f64 {
        self.y.norm()
    }

    /// Block-diagonal sum `p ⊕ q`.
    pub fn direct_sum(&self, other: &LiePair) -> LiePair {
        let x = CMatrix::block_diag(&self.x, &other.x);
        let y = CMatrix::block_diag(&self.y, &other.y);
        let relation_residual = relation_residual(&x, &y);
        LiePair {
            x,
            y,
            nilpotency_index: self.nilpotency_index.max(other.nilpotency_index),
            relation_residual,
        }
    }

    /// The pair `(x + c·I, y)`; the relation is unaffected by the shift.
    pub fn translated(&self, c: Complex64) -> LiePair {
        let x = self.x.shifted(c);
        let relation_residual = relation_residual(&x, &self.y);
        LiePair {
            x,
            y: self.y.clone(),
            nilpotency_index: self.nilpotency_index,
            relation_residual,
        }
    }

    /// The one-dimensional pair `x = [c]`, `y = [0]`.
    pub fn scalar(c: Complex64) -> LiePair {
        LiePair {
            x: CMatrix::scalar(c),
            y: CMatrix::zeros(1, 1),
            nilpotency_index: 1,
            relation_residual: 0.0,
        }
    }
}
