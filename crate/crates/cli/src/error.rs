use std::fmt;

use pidmat::Error;

/// Failure of a CLI invocation, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, or operands the operation rejects.
    Input(String),
    NonPrimeModulus(u64),
    /// Degree, size or bound limits exceeded.
    Limit(String),
    /// An emitted certificate failed re-verification.
    SelfCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::SelfCheck(_) => 3,
            CliError::NonPrimeModulus(_) => 4,
            CliError::Limit(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::NonPrimeModulus(p) => write!(f, "modulus {p} is not prime"),
            CliError::Limit(m) => write!(f, "limit exceeded: {m}"),
            CliError::SelfCheck(m) => write!(f, "self-check failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Certificate(_) => CliError::SelfCheck(e.to_string()),
            Error::FactorBound(_) | Error::OracleBound { .. } | Error::Overflow(_) => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Fails with a self-check error unless `ok`.
pub fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::SelfCheck(what()))
    }
}
