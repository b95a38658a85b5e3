use hexlattice::HexError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DdError {
    #[error(transparent)]
    Lattice(#[from] HexError),
    #[error("component {0} has no orientation")]
    Unoriented(usize),
    #[error("malformed decomposition: {0}")]
    Malformed(String),
    #[error("the two domains share no face")]
    Disjoint,
    #[error("expected {expected} orientation bits, got {got}")]
    BitCount { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, DdError>;
