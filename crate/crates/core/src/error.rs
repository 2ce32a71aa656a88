use thiserror::Error;

/// Everything that can go wrong while building fields, constructions and
/// distance sets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("field order {p}^{n} exceeds the 2^31 size guard")]
    SizeGuard { p: u64, n: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("{m} does not divide the extension degree {n}")]
    NotADivisor { m: u32, n: u32 },
    #[error("-1 has no square root in a field of order {q}")]
    NoSqrtMinusOne { q: u64 },
    #[error("subfield of degree {m} is not the index-3 subfield of a degree-{n} field")]
    WrongSubfieldDegree { m: u32, n: u32 },
    #[error("basis elements are linearly dependent over the subfield")]
    DependentBasis,
    #[error("work of {needed} exceeds the budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("census is only supported for q in {{2, 3, 5}}, got {0}")]
    UnsupportedSize(u64),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
