use thiserror::Error;

/// Errors raised while building fields, subsets and codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("field of {size} elements exceeds the table cap of 2^26")]
    FieldTooLarge { size: u64 },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("the residue of X is not primitive (order {order}, expected {expected})")]
    NotPrimitive { order: u64, expected: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("not a partial difference set: {0}")]
    NotPds(String),
    #[error("cost guard exceeded: {0}")]
    GuardExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
