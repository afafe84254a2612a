use thiserror::Error;

/// Errors raised by the numeric and arithmetic routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bad reduction at p = {0} (p divides the discriminant of the model)")]
    BadReduction(u64),
    #[error("p = {p} exceeds the point-counting cutoff {cutoff}")]
    PrimeTooLarge { p: u64, cutoff: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
