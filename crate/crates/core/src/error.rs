use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range 1..={nvars}")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate {index} is zero; point is outside the torus")]
    ZeroCoordinate { index: usize },
    #[error("logarithmic polar map vanishes at the point; Gauss map undefined")]
    GaussUndefined,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors are not linearly independent")]
    NotIndependent,
    #[error("lattice basis is not primitive")]
    NotPrimitive,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("lattice ranks {lambda} + {m} do not sum to {n}")]
    RankMismatch { lambda: usize, m: usize, n: usize },
    #[error("lattice bases are not orthogonal")]
    NotOrthogonal,
    #[error("integer overflow in exponent arithmetic")]
    Overflow,
    #[error("infeasible corpus specification: {0}")]
    InfeasibleCorpus(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
