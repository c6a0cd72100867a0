use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("empty input to {0}")]
    Empty(&'static str),
    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("duplicate column {first} == {second}")]
    DuplicateColumns { first: usize, second: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("no prime found below {0}")]
    NoPrime(u128),
    #[error("all {0} modeling attempts failed")]
    RetriesExhausted(usize),
    #[error("internal check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded { what, needed, cap })
    } else {
        Ok(())
    }
}
