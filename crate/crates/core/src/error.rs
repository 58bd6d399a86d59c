use thiserror::Error;

/// Errors raised across the algebra engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not a scalar multiple of the identity{}", context_suffix(.context))]
    NotScalar { context: Option<String> },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("paravector has zero norm (point at infinity)")]
    NullVector,

    #[error("no signed unit word of length <= {cap} matches the matrix")]
    NoMatch { cap: usize },

    #[error("subalgebra is not closed under the commutator: {0}")]
    NotClosed(String),

    #[error("result leaves the paravector span (residual {residual:e})")]
    NotParavector { residual: f64 },

    #[error("denominator is not invertible; the point maps to infinity")]
    MapsToInfinity,

    #[error("grid {nx}x{ny} is smaller than the 5x5 stencil minimum")]
    GridTooSmall { nx: usize, ny: usize },

    #[error("map has a pole at ({x}, {y}) within {margin} of the grid")]
    PoleOnGrid { x: f64, y: f64, margin: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn context_suffix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
