use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The rotation is within tolerance of the identity, so it has no axis.
    #[error("rotation axis is undefined at (s, t) = ({s}, {t})")]
    UndefinedAxis { s: f64, t: f64 },

    #[error("target lies on the boundary of the homotopy rectangle: {0}")]
    EdgeDegenerate(String),

    #[error("w = {w:?} lies within {cone} rad of the hinge point of v = {v:?}")]
    HingeDegeneracy { v: [f64; 3], w: [f64; 3], cone: f64 },

    #[error("search failed: {0}")]
    NotFound(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
