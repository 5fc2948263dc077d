use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid weight {0}: need an even weight >= 12 with a nonzero cusp space")]
    InvalidWeight(i64),
    #[error("insufficient precision: {needed} coefficients required, {given} requested")]
    InsufficientPrecision { needed: usize, given: usize },
    #[error("log-gamma pole at z = {0}")]
    Pole(String),
    #[error("eigenvalue solver failed for weight {k}: {reason} (condition estimate {condition:.3e})")]
    EigenSolver { k: i64, reason: String, condition: f64 },
    #[error("eigenvalue table does not cover prime {prime} (extend the table beyond {bound})")]
    ExtendTable { prime: u64, bound: u64 },
    #[error("contour integral did not converge: {0}")]
    Contour(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("derivative of order {order} not available (have {available})")]
    DerivativeOrder { order: usize, available: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient Fourier terms: {required} needed, {given} given")]
    InsufficientTerms { required: usize, given: usize },
    #[error("cache error: {0}")]
    Cache(String),
    #[error("overflow guard: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
