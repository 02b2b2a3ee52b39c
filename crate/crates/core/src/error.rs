use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix contains non-finite entries")]
    InvalidMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace is not nested in the outer subspace (residual {residual:e} > {bound:e})")]
    NotNested { residual: f64, bound: f64 },

    #[error("relation yx - xy = y violated: {what} residual {residual:e} exceeds {bound:e}")]
    RelationViolated { what: String, residual: f64, bound: f64 },

    #[error("y is not nilpotent: |y^n| = {norm:e} exceeds {bound:e}")]
    NotNilpotent { norm: f64, bound: f64 },

    #[error("y^2 is not zero: |y^2| = {norm:e} exceeds {bound:e}")]
    NotY2Zero { norm: f64, bound: f64 },

    #[error("empty generator specification")]
    EmptySpec,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("schema error: {0}")]
    SchemaError(String),

    #[error("tolerance breakdown: {0}")]
    ToleranceBreakdown(String),

    #[error("exact relation yx - xy = y does not hold")]
    ExactRelationViolated,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
