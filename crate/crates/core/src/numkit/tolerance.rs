use serde::{Deserialize, Serialize};

/// Default complex-point matching radius.
pub const DEFAULT_MATCH_TOL: f64 = 1e-8;
/// Default residual factor; the bound actually used is scaled by `1 + |x| + |y|`.
pub const DEFAULT_RESIDUAL_FACTOR: f64 = 1e-10;

/// Numerical tolerances shared by every module.
///
/// `rank_rel_tol` and `residual_tol` default to problem-dependent values, so
/// they are stored as overrides and resolved through the accessor methods.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative singular-value cutoff factor; `None` means `max(rows, cols) · 2⁻⁵²`.
    pub rank_rel_tol: Option<f64>,
    pub match_tol: f64,
    /// Relation/chain residual bound; `None` means `1e-10 · (1 + |x| + |y|)`.
    pub residual_tol: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_rel_tol: None,
            match_tol: DEFAULT_MATCH_TOL,
            residual_tol: None,
        }
    }
}

impl Tolerances {
    pub fn with_rank_rel_tol(mut self, v: f64) -> Self {
        self.rank_rel_tol = Some(v);
        self
    }

    pub fn with_match_tol(mut self, v: f64) -> Self {
        self.match_tol = v;
        self
    }

    pub fn with_residual_tol(mut self, v: f64) -> Self {
        self.residual_tol = Some(v);
        self
    }

    /// True if every explicitly set field is a nonnegative finite number.
    pub fn is_valid(&self) -> bool {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        ok(self.match_tol) && self.rank_rel_tol.is_none_or(ok) && self.residual_tol.is_none_or(ok)
    }

    pub fn rank_rel_tol_for(&self, rows: usize, cols: usize) -> f64 {
        self.rank_rel_tol
            .unwrap_or_else(|| rows.max(cols) as f64 * f64::EPSILON)
    }

    /// Residual bound for a pair with the given operator norms.
    pub fn residual_tol_for(&self, x_norm: f64, y_norm: f64) -> f64 {
        self.residual_tol
            .unwrap_or(DEFAULT_RESIDUAL_FACTOR * (1.0 + x_norm + y_norm))
    }

    /// Residual bound for comparisons between orthonormal bases (unit scale).
    pub fn subspace_tol(&self) -> f64 {
        self.residual_tol_for(0.0, 0.0)
    }
}
