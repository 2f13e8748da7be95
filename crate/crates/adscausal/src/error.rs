use thiserror::Error;

/// Errors surfaced by the algebra construction and the causal analyzer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("so(2,n) requires n >= 2, got n = {0}")]
    InvalidDimension(usize),

    /// A root space came out with the wrong dimension, or no sign/scale choice
    /// satisfies the anchor relations. Signals a bug, not user error.
    #[error("normalization failure: {0}")]
    NormalizationFailure(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("direction vector is not unit: {0}")]
    NotUnit(String),

    #[error("transported reference vector has a component outside span{{J1, X++, X+-, X+0:k}}: residual {0:e}")]
    ResidualComponent(f64),

    #[error("closed quadratic formulas disagree with the Gram expansion: {0}")]
    ConsistencyFailure(String),

    #[error("last two spatial components vanish below 1e-12; rotation angle undefined")]
    DegenerateTransport,

    #[error("path endpoints classify identically; nothing to bisect")]
    NoCrossing,

    #[error("classification flips under grid refinement; treat as horizon proximity")]
    InconclusiveNearBoundary,

    #[error("bad point coordinates: {0}")]
    BadPoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
