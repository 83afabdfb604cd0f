use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit: {a} mod {n}")]
    NotAUnit { a: u64, n: u64 },

    #[error("invalid modulus {0}")]
    InvalidModulus(u64),

    #[error("row has {got} components but there are {expected} moduli")]
    RowWidth { got: usize, expected: usize },

    #[error("component {index} out of range: {value} is not below {modulus}")]
    ComponentRange { index: usize, value: u64, modulus: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element out of range for this group")]
    ElementOutOfRange,

    #[error("groups are not in the same isomorphism family: {0}")]
    NotIsomorphic(String),

    #[error("unknown encoding")]
    UnknownEncoding,

    #[error("encoding table bound exceeded: {0} entries")]
    TableBound(u64),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("statevector bound exceeded: domain has {0} points")]
    StatevectorBound(u64),

    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),

    #[error("not a valid generating set for P_{{p,r}}")]
    InvalidGeneratingSet,

    #[error("Yprime unavailable")]
    YPrimeUnavailable,

    #[error("f is not H-periodic")]
    NotPeriodic,

    #[error("enumeration bound exceeded: {0} elements")]
    EnumerationBound(u64),

    #[error("the Z_{{p^r}}^m x| Z_p solver requires a unique encoding")]
    UniqueEncodingRequired,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
