use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("non-composable: codomain {cod} does not match domain {dom}")]
    NonComposable { cod: usize, dom: usize },
    #[error("invalid monotone map: {0}")]
    InvalidMap(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("unknown simplex {0:?}")]
    UnknownSimplex(String),
    #[error("malformed simplicial set: {0}")]
    MalformedSSet(String),
    #[error("malformed point: {0}")]
    MalformedPoint(String),
    #[error("simplicial set mismatch")]
    SSetMismatch,
    #[error("not a standard simplex: {0}")]
    NotRepresentable(String),
    #[error("codomain mismatch: {0} vs {1}")]
    CodomainMismatch(usize, usize),
    #[error("N too small: need N >= 2n >= 2, got n={n}, N={big_n}")]
    NTooSmall { n: usize, big_n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
