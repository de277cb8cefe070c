use alloc::string::String;
use core::fmt;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidArgument(String),
    /// A hypothesis the caller relies on does not hold.
    PreconditionFailed(String),
    /// An exact self-check failed; the result was withheld.
    InternalInconsistency(String),
    DegenerateConfiguration(String),
    BudgetExceeded(String),
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::PreconditionFailed(m) => write!(f, "precondition failed: {m}"),
            Error::InternalInconsistency(m) => write!(f, "internal inconsistency: {m}"),
            Error::DegenerateConfiguration(m) => write!(f, "degenerate configuration: {m}"),
            Error::BudgetExceeded(m) => write!(f, "budget exceeded: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidArgument(alloc::format!($($arg)*)) };
}
pub(crate) use invalid;
