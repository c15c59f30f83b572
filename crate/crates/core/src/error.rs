use thiserror::Error;

use crate::ring::Domain;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero elements is undefined")]
    BothZero,
    #[error("operation requires a nonzero argument")]
    ZeroArgument,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("prime factor of {0} exceeds the factorization bound 10^9")]
    FactorBound(String),
    #[error("domain mismatch: {0:?} vs {1:?}")]
    DomainMismatch(Domain, Domain),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("elements {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("determinant {0} is not prime")]
    CompositeDeterminant(String),
    #[error("matrix is not a left divisor")]
    NotALeftDivisor,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("lattice is not of full rank")]
    RankDeficient,
    #[error("|det| = {det} exceeds the oracle bound {bound}")]
    OracleBound { det: String, bound: u64 },
    #[error("value {0} is outside the oracle's machine-integer range")]
    Overflow(String),
    #[error("oracle supports the integer domain only")]
    OracleDomain,
    #[error("internal certificate check failed: {0}")]
    Certificate(String),
}
