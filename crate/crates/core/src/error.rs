use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("subfield degree {h} does not divide extension degree {n}")]
    InvalidSubfield { h: usize, n: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("element is not in the subfield GF({0})")]
    NotInSubfield(u128),
    #[error("coefficient {value} out of range for GF({p})")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,

    #[error("row count {rows} out of range 1..={m}")]
    RowCountOutOfRange { rows: usize, m: usize },
    #[error("elements are not linearly independent over GF({q})")]
    NotABasis { q: u128 },
    #[error(
        "GF({q}^{m}) has no self-dual basis over GF({q}): one exists if and only if \
         q is even or q and m are both odd"
    )]
    NoSelfDualBasis { q: u128, m: usize },
    #[error("congruence factorization failed: {0}")]
    FactorizationFailed(String),

    #[error("dimension {k} out of range 1..={m}")]
    DimensionOutOfRange { k: usize, m: usize },
    #[error("code has full dimension {m}; its dual is trivial")]
    FullDimension { m: usize },
    #[error("{count} cases exceed the enumeration budget of {budget}")]
    TooLarge { count: u128, budget: u128 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("Hermitian test requires even length, got {0}")]
    OddLength(usize),
    #[error("hull dimension {hull_dim} exceeds min(k, m-k) = {max}")]
    InvalidHullDim { hull_dim: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
