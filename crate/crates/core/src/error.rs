use thiserror::Error;

/// Failures of construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bad alpha grid: {0}")]
    BadGrid(String),
    #[error("cuts are not nested at level index {index} (alpha = {alpha})")]
    NonNested { index: usize, alpha: f64 },
    #[error("empty cut at level index {index} (alpha = {alpha}): lower {lower} > upper {upper}")]
    EmptyCut {
        index: usize,
        alpha: f64,
        lower: f64,
        upper: f64,
    },
    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("direction grids differ: {0} vs {1} directions")]
    GridMismatch(usize, usize),
    #[error("invalid convex body at level index {index}: {reason}")]
    InvalidBody { index: usize, reason: String },
    #[error("family is empty")]
    EmptyFamily,
    #[error("bad sequence index {0}")]
    BadIndex(i64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range<T>(what: &'static str, value: f64) -> Result<T> {
    Err(Error::OutOfRange { what, value })
}
