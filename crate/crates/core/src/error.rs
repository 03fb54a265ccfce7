use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration cap exceeded: {what} needs {needed} candidates, cap is {cap}")]
    CapExceeded {
        what: String,
        needed: u128,
        cap: u128,
    },
    #[error("bound too small: {0}")]
    BoundTooSmall(String),
    #[error("theory violation: {0}")]
    TheoryViolation(String),
}
