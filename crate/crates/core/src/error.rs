use thiserror::Error;

/// Largest input accepted anywhere in the crate (2^63 - 1).
pub const MAX_INPUT: u64 = i64::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0} is not on the prime moduli (need n >= 5 and gcd(n, 6) = 1)")]
    NotOnPrimeModuli(u64),

    #[error("{0} is prime; it has no factor pair on the grid")]
    NoFactors(u64),

    #[error("{0} is not a quasi-prime candidate (it shares a factor with 6)")]
    NotQuasiPrime(u64),

    #[error("invalid input {n}: must be at least {min}")]
    Invalid { n: u64, min: u64 },

    #[error("resource limit exceeded: {what} = {requested} exceeds cap {cap}")]
    Resource {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("arithmetic overflow: value exceeds 2^63 - 1 ({0})")]
    Overflow(String),

    /// Two independent computations disagreed. Never expected in a correct build.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_input(n: u64) -> Result<u64> {
    if n > MAX_INPUT {
        Err(Error::Overflow(format!("input {n}")))
    } else {
        Ok(n)
    }
}

pub(crate) fn check_resource(what: &'static str, requested: u64, cap: u64) -> Result<()> {
    if requested > cap {
        Err(Error::Resource {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Multiplies two values, failing if the product leaves the `MAX_INPUT` range.
pub(crate) fn capped_mul(a: u64, b: u64) -> Result<u64> {
    match a.checked_mul(b) {
        Some(p) if p <= MAX_INPUT => Ok(p),
        _ => Err(Error::Overflow(format!("{a} * {b}"))),
    }
}
