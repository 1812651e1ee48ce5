//! Error types shared across the crate.

use core::fmt;

/// Errors reported by encoders, decoders, family constructions and the
/// verification suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violated a documented precondition.
    InvalidInput(String),
    /// Parameters fall outside the supported envelope (enumeration sizes,
    /// overflow guards, field-size conditions).
    ParameterEnvelope(String),
    /// The received word is not explainable by the declared channel, or no
    /// candidate matches the syndrome.
    Undecodable(String),
    /// A condition that the construction guarantees was observed to fail.
    /// This is a bug in the code or its parameters, never a channel error.
    InvariantViolation(String),
    /// A randomized family missed its cover-freeness target for this seed;
    /// callers regenerate with a fresh seed.
    FamilyFailure(String),
    /// An exhaustive verification request exceeds the configured budget.
    VerifyBudgetExceeded(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::ParameterEnvelope(msg) => write!(f, "parameters outside supported envelope: {msg}"),
            Error::Undecodable(msg) => write!(f, "undecodable: {msg}"),
            Error::InvariantViolation(msg) => write!(f, "internal invariant violated: {msg}"),
            Error::FamilyFailure(msg) => write!(f, "random family failure: {msg}"),
            Error::VerifyBudgetExceeded(msg) => write!(f, "verification budget exceeded: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 2 undecodable, 3 invariant
    /// violation, 4 bad parameters.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Undecodable(_) => 2,
            Error::InvariantViolation(_) => 3,
            Error::InvalidInput(_)
            | Error::ParameterEnvelope(_)
            | Error::FamilyFailure(_)
            | Error::VerifyBudgetExceeded(_) => 4,
        }
    }
}
