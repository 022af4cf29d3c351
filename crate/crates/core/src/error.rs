use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// The type is `Clone` so cached fallible computations (unit quotients) can
/// hand the same error to every caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("element is not a unit: {0}")]
    NonUnit(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not coprime to p = {1}")]
    NotCoprime(u64, u32),
    #[error("unsupported prime p = {0}")]
    UnsupportedPrime(u32),
    #[error("class data for p = {0} must be supplied with a config file: {1}")]
    NeedsConfig(u32, String),
    #[error("invalid class data at `{path}`: {msg}")]
    InvalidClassData { path: String, msg: String },
    #[error("enumeration of {size} elements exceeds the limit of {limit}")]
    TooLarge { size: u128, limit: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("descriptors live over different contexts")]
    ContextMismatch,
    #[error("semidirect product is not faithful")]
    NotFaithful,
    #[error("materialization needs trivial ideal classes: {0}")]
    NontrivialClass(String),
    #[error("unsupported Ext argument: {0}")]
    UnsupportedExt(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
