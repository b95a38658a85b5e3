use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScalesError {
    #[error("need i_min < i_max, got {0} and {1}")]
    BadRange(i32, i32),
    #[error("walk starts at radius {0}, outside the innermost circle")]
    StartOutside(f64),
    #[error("walk ends before leaving the outermost circle")]
    NoExit,
    #[error("crossing index {0} is missing from the trace")]
    MissingPiece(usize),
    #[error("angle {0} is outside [0, pi]")]
    BadAngle(f64),
    #[error("no vertex in the start ball")]
    EmptyStartBall,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("empty polyline")]
    EmptyCurve,
    #[error("output failed: {0}")]
    Io(String),
    #[error(transparent)]
    Graph(#[from] ust::UstError),
}

pub type Result<T> = std::result::Result<T, ScalesError>;
