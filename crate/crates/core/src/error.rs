use thiserror::Error;

/// Errors raised by the model, algebra, dynamics and certification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A potential was evaluated on its singular set.
    #[error("singular evaluation of {potential} potential: {coordinate} = 0 is outside the domain")]
    Singular { potential: &'static str, coordinate: &'static str },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An exact (rational) computation was requested on a floating-point input.
    #[error("{0} is not an exact rational")]
    NotExact(String),

    #[error("non-finite phase-space component {0}")]
    NonFinite(&'static str),

    #[error("unknown observable `{0}`")]
    UnknownObservable(String),

    #[error("invalid integral indices (m = {m}, n = {n}): {reason}")]
    InvalidIndices { m: i64, n: i64, reason: &'static str },

    #[error("observable `{0}` is complex-valued")]
    ComplexValued(String),

    #[error("unsupported potential for this operation: {0}")]
    Unsupported(String),

    #[error("{0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
