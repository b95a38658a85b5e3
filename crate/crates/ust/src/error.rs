use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum UstError {
    #[error("vertex {0} out of range")]
    NoVertex(usize),
    #[error("no edge between {0} and {1}")]
    NoEdge(usize, usize),
    #[error("invalid edge {0}-{1}: {2}")]
    BadEdge(usize, usize, String),
    #[error("edges {0} and {1} cross")]
    NotPlanar(usize, usize),
    #[error("graph has no boundary vertex")]
    EmptyBoundary,
    #[error("vertex {0} cannot reach the boundary")]
    Unreachable(usize),
    #[error("walk path is empty")]
    EmptyPath,
    #[error("stopping index {0} beyond the final index {1}")]
    StopOutOfRange(usize, usize),
    #[error("order misses vertex {0}")]
    OrderIncomplete(usize),
    #[error("not a wired tree: {0}")]
    NotTree(String),
    #[error("not a perfect matching: {0}")]
    NotMatching(String),
    #[error("more than {0} configurations")]
    CapExceeded(usize),
    #[error("unknown loop eraser `{0}`")]
    UnknownEraser(String),
    #[error("point lies on the curve")]
    OnCurve,
    #[error("polyline is not simple")]
    SelfIntersecting,
    #[error("polyline needs at least {0} segments")]
    TooFewSegments(usize),
    #[error("zero-length segment at index {0}")]
    DegenerateSegment(usize),
    #[error("faces {0:?} and {1:?} are not joined inside the tree")]
    NoTreePath((i32, i32), (i32, i32)),
    #[error("face {0:?} is not a face of the dimer graph")]
    NoFace((i32, i32)),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, UstError>;
