use thiserror::Error;

use crate::ops::OpKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ordered property violated: node at level {level} over children at levels {lo_level} and {hi_level}")]
    OrderViolation {
        level: usize,
        lo_level: usize,
        hi_level: usize,
    },
    #[error("node handle {0} does not belong to this manager")]
    InvalidHandle(u32),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("families belong to different managers")]
    ManagerMismatch,
    #[error("operation requires a {expected} manager")]
    SemanticsMismatch { expected: &'static str },
    #[error("variable orders of the two managers differ")]
    OrderMismatch,
    #[error("universes of the explicit families differ")]
    UniverseMismatch,
    #[error("family has {count} sets, more than the cap of {cap}")]
    CapExceeded { count: u64, cap: u64 },
    #[error("set count does not fit in 64 bits")]
    CountOverflow,
    #[error("quotient by the empty family is undefined")]
    EmptyDivisor,
    #[error("conditioning sets overlap on `{0}`")]
    OverlappingCondition(String),
    #[error("universe of {n} elements exceeds the limit of {max}")]
    UniverseTooLarge { n: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation `{0}` is not supported here")]
    UnsupportedOp(OpKind),
    #[error("operation `{0}` needs {1}")]
    MissingOperand(OpKind, &'static str),
    #[error("{op} at m={m}: {what}")]
    IdentityMismatch {
        op: OpKind,
        m: usize,
        what: String,
    },
    #[error("record range too short: {0}")]
    InsufficientRange(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
