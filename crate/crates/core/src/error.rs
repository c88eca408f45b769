use core::fmt;

/// Errors raised by the counting kernels.
///
/// `Inconsistent` is never expected: it signals that an exact identity that
/// must produce an integer did not, which means the implementation is wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Argument outside the operation's domain.
    Domain(&'static str),
    /// Requested table exceeds the configured memory budget.
    Budget { requested: u64, limit: u64 },
    /// A polynomial is outside the C3-or-split family.
    NotInFamily { a: i64, b: i64 },
    /// An exact formula failed to produce an integer.
    Inconsistent(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Budget { requested, limit } => {
                write!(f, "requested {requested} entries exceeds budget of {limit}")
            }
            Error::NotInFamily { a, b } => {
                write!(f, "t^3 - t^2 + ({a})t + ({b}) is neither C3 nor split")
            }
            Error::Inconsistent(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
