use thiserror::Error;

use crate::expvec::ExpVec;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("weight vector must be strictly positive, got {0}")]
    NonPositiveWeight(ExpVec),
    #[error("weight vector must be non-negative, got {0}")]
    NegativeWeight(ExpVec),
    #[error("argument must be non-negative: {0}")]
    NegativeArgument(String),
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("zero input where a nonzero value is required: {0}")]
    ZeroInput(&'static str),
    #[error("truncated coefficients are not accepted here: {0}")]
    TruncatedInput(&'static str),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not a Weierstrass polynomial")]
    NotWeierstrass,
    #[error("polynomial is not quasi-ordinary")]
    NotQuasiOrdinary,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("difference of series is not a monomial times a unit (vertices {0:?})")]
    NotComonomial(Vec<ExpVec>),
    #[error("series are indistinguishable at precision {0}")]
    Indistinguishable(String),
    #[error("contacts are not totally ordered: {0} and {1} are incomparable")]
    ContactsNotTotallyOrdered(ExpVec, ExpVec),
    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: usize, lo: usize, hi: usize },
    #[error("resultant vanishes")]
    ResultantVanishes,
    #[error("lattice is not contained in the finer lattice")]
    NotSublattice,
    #[error("invalid characteristic specification: {0}")]
    InvalidSpec(String),
    #[error("Weierstrass preparation hypothesis fails: {0}")]
    PreparationFails(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("extension tower exceeded {0} levels")]
    TowerExhausted(usize),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
