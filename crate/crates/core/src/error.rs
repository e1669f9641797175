use thiserror::Error;

/// Errors raised by the arithmetic kernel and the front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a p-th power: {0}")]
    NotAPthPower(String),
    #[error("characteristic mismatch: {0}")]
    CharacteristicMismatch(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("rank cap exceeded: r = {0}, cap = {1}")]
    RankCapExceeded(usize, usize),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("search space exceeded: {0}")]
    SearchSpaceExceeded(String),
    #[error("unsupported residue field: {0}")]
    UnsupportedResidueField(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn prec_err(what: impl Into<String>) -> Error {
    Error::PrecisionExhausted(what.into())
}
