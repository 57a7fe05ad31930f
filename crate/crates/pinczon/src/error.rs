use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("images are not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands live over different bases")]
    BasisMismatch,
    #[error("degenerate pairing: matrix is singular")]
    DegeneratePairing,
    #[error("inhomogeneous coefficients: {0}")]
    Inhomogeneous(String),
    #[error("form is not cyclic")]
    NotCyclic,
    #[error("input is not totally symmetric")]
    NotSymmetric,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid module action: {0}")]
    InvalidModule(String),
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("structure equation fails: {0}")]
    InvalidStructure(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
