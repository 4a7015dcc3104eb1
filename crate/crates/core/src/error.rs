use thiserror::Error;

/// Errors raised by the evaluators, the identity registry and the sweep front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma has a pole at x = {0}")]
    Pole(f64),
    #[error("gamma overflows at x = {0}")]
    Overflow(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("constraint violation: {0}")]
    Constraint(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn constraint(msg: impl Into<String>) -> Error {
    Error::Constraint(msg.into())
}
