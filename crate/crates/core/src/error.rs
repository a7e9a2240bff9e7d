use thiserror::Error;

/// Errors produced by the fractional calculus routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("point {point} is outside the domain [{lo}, {hi}]")]
    OutOfDomain { point: i64, lo: i64, hi: i64 },

    #[error("order must be positive, got {0}")]
    InvalidOrder(String),

    #[error("operation requires a non-integer order, got {0}")]
    IntegerOrder(String),

    #[error("value is not representable in the rational backend: {0}")]
    NotRepresentable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("singular Jacobian at iteration {0}")]
    SingularJacobian(usize),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
