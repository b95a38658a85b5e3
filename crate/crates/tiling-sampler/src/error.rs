use hexlattice::HexError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error(transparent)]
    Lattice(#[from] HexError),
    #[error("more than {0} tilings")]
    CapExceeded(usize),
    #[error("frozen part has no completion: {0}")]
    NotCompletable(String),
    #[error("coupling did not coalesce within {0} epochs")]
    NoCoalescence(usize),
    #[error("at least one sample is required")]
    ZeroSamples,
    #[error("radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),
    #[error("unknown sampler `{0}`")]
    UnknownSampler(String),
    #[error("csv output failed: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, SamplerError>;
