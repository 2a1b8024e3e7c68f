use crate::arith::ArithError;
use crate::basis::SpaceKind;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("space {0} is not available for N={1}")]
    UnsupportedSpace(SpaceKind, usize),
    #[error("coefficient vector has length {got}, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("unsupported in verified mode: {0}")]
    NotVerifiable(String),
    #[error("invalid-tau: {0}")]
    InvalidTau(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("jacobian-singular")]
    JacobianSingular,
    #[error("pencil-not-definite")]
    PencilNotDefinite,
    #[error("mu0-possibly-zero")]
    Mu0PossiblyZero,
    #[error("tail-unresolved")]
    TailUnresolved,
    #[error("malformed solution file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
