use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("negative exponent in input polynomial (inputs must be polynomials, not Laurent)")]
    NegativeExponent,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i128),

    #[error("face is not a subset of the Newton polytope")]
    FaceNotInPolytope,

    #[error("degenerate map: {0}")]
    DegenerateMap(String),

    #[error("invalid chain transformation: {0}")]
    InvalidChain(String),

    #[error("invalid tuple class for this operation: {0}")]
    InvalidClass(String),

    #[error("positive-dimensional solution set detected (map is not T-boundary generic here)")]
    PositiveDimensional,

    #[error("solver capability exceeded: {0}")]
    SolverCapability(String),

    #[error("T-boundary genericity violated: {0}")]
    TbgViolation(String),

    #[error("membership test failed: point is not on the component")]
    NotAMember,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
