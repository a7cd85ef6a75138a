use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank n = {0} is out of range (need n >= 2)")]
    InvalidRank(usize),
    #[error("element does not have the {0} symmetry type")]
    SymmetryMismatch(&'static str),
    #[error("singular matrix in {0}")]
    Singular(&'static str),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("truncation exceeded: {0}")]
    Truncation(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram {diagram} is not admissible at degree {k}")]
    NotAdmissible { diagram: String, k: usize },
    #[error("odd box count {0}")]
    OddBoxCount(i64),
    #[error("critical shift: {0}")]
    Critical(String),
    #[error("zero divisor in triangular solve: eigenvalue {alpha} of {upper} meets {lower}")]
    ZeroDivisor { alpha: String, upper: String, lower: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
