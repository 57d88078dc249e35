use thiserror::Error;

/// Errors produced by the capacity engine and its front ends.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a physical or mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Scenario text failed to parse.
    #[error("scenario syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    /// Scenario contained a key the format does not define (strict mode).
    #[error("unknown key `{key}` at line {line}")]
    UnknownKey { line: usize, key: String },

    /// A parsed value violated a profile or sweep invariant.
    #[error("invalid value for `{field}`: {msg}")]
    Invariant { field: String, msg: String },

    /// A sweep or command referenced a profile that is not defined.
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),

    /// Two data series that must share a grid do not.
    #[error("mismatched grids: {0}")]
    MismatchedGrids(String),

    /// A renderer was handed nothing to render.
    #[error("empty result")]
    EmptyResult,

    /// The transmit-power back-solver could not bracket the target.
    #[error("back-solve target unreachable: {0}")]
    Unreachable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn invariant(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Invariant {
            field: field.into(),
            msg: msg.into(),
        }
    }
}
