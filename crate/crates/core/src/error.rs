use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("space has {points} points but distance matrix is {rows}x{cols}")]
    Shape { points: usize, rows: usize, cols: usize },
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid point label {0:?}: labels may not contain '(', ')' or ','")]
    InvalidLabel(String),
    #[error("not a metric: {0}")]
    NotAMetric(String),
    #[error("map is not short: {0}")]
    NotShort(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("objects live on different spaces")]
    SpaceMismatch,
    #[error("codomain of the first map is not the domain of the second")]
    DomainMismatch,
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("space is not a registered tensor product")]
    NotATensor,
    #[error("expected an {expected}-fold tensor product")]
    ArityMismatch { expected: usize },
    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("duplicate measure at positions {0} and {1}")]
    DuplicateMeasure(usize, usize),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("optimality certificate failed: {0}")]
    Certificate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },
    #[error("duplicate {kind} {name:?}")]
    DuplicateName { kind: &'static str, name: String },
    #[error("unknown law {0:?}")]
    UnknownLaw(String),
}

pub type Result<T> = std::result::Result<T, Error>;
