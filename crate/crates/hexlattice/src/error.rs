use thiserror::Error;

use crate::coords::{FaceCoord, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HexError {
    #[error("hexagon sides must be positive, got ({0}, {1}, {2})")]
    NonPositiveSide(i64, i64, i64),
    #[error("domain has no vertices")]
    EmptyDomain,
    #[error("domain is not connected")]
    NotConnected,
    #[error("domain is not simply connected")]
    NotSimplyConnected,
    #[error("vertex {0:?} has no neighbour in the domain")]
    IsolatedVertex(Vertex),
    #[error("face {0:?} is not in the domain")]
    UnknownFace(FaceCoord),
    #[error("vertex {0:?} is not in the domain")]
    UnknownVertex(Vertex),
    #[error("not a perfect matching: {0}")]
    NotPerfect(String),
    #[error("domain admits no tiling: {0}")]
    Untileable(String),
    #[error("radius^2 {requested} exceeds the domain radius^2 {limit}")]
    RadiusTooLarge { requested: String, limit: String },
    #[error("height field is empty")]
    EmptyField,
    #[error("height field is inconsistent: {0}")]
    InconsistentField(String),
    #[error("invalid domain document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, HexError>;
