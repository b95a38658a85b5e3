use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("boundary discrepancy {found} exceeds the bound {bound}")]
    KViolated { found: i64, bound: i64 },
    #[error("unknown perturbation {0:?}")]
    UnknownPerturbation(String),
    #[error("perturbation does not apply: {0}")]
    BadPerturbation(String),
    #[error("empty sample list")]
    Empty,
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Hex(#[from] hexlattice::HexError),
    #[error(transparent)]
    Sampler(#[from] tiling_sampler::SamplerError),
    #[error(transparent)]
    DoubleDimer(#[from] double_dimer::DdError),
    #[error(transparent)]
    Ust(#[from] ust::UstError),
    #[error(transparent)]
    Scales(#[from] scales::ScalesError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, LabError>;
