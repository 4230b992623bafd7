use thiserror::Error;

/// Errors raised by the algebraic and differential routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    CapacityExceeded { dim: usize, max: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cannot combine a form with a multivector")]
    VarianceMismatch,
    #[error("malformed input: {0}")]
    Invalid(String),
    #[error("matrix is not antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("matrix is singular: {0}")]
    Singular(String),
    #[error("no exact square root of {0}")]
    NoExactSquareRoot(String),
    #[error("basis elements {i} and {j} pair to {value}, not zero")]
    NotIsotropic { i: usize, j: usize, value: String },
    #[error("rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("form is not a pure spinor: null space has dimension {found} of {expected}")]
    NotPure { expected: usize, found: usize },
    #[error("not a generalized complex structure: {0}")]
    NotGeneralizedComplex(String),
    #[error("three-form is not closed")]
    NotClosed,
    #[error("subbundle is not involutive: {0}")]
    NotInvolutive(String),
    #[error("bivector is not Poisson")]
    NotPoisson,
    #[error("not transverse at sample {0}")]
    NotTransverse(String),
    #[error("rank jumps at sample {point}: {found} instead of {expected}")]
    RankJump {
        point: String,
        expected: usize,
        found: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
