use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square and non-empty")]
    NotSquare,
    #[error("det J = 0: exponent vectors are linearly dependent")]
    DetZero,
    #[error("|det J| = {0} is too large to enumerate")]
    TooLarge(String),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0:?} is not in the cone spanned by the exponent vectors")]
    NotInCone(Vec<i64>),
    #[error("{0:?} is not in the fundamental domain")]
    NotInDomain(Vec<i64>),
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("gcd(p, det J) != 1 (p = {p}, det J = {det})")]
    NotCoprime { p: u64, det: String },
    #[error("fundamental domain enumeration disagrees with the grid oracle")]
    DomainMismatch,
    #[error("Hodge numbers disagree: {0}")]
    HodgeMismatch(String),
    #[error("polygon is missing an endpoint: {0}")]
    MissingEndpoint(String),
    #[error("polygons cover different ranges: [0, {left}] vs [0, {right}]")]
    RangeMismatch { left: String, right: String },
    #[error("torus has {size} points, budget is {limit}")]
    BudgetExceeded { size: u128, limit: u128 },
    #[error("power series has a nonzero coefficient at degree {0}")]
    NotPolynomial(usize),
    #[error("L-polynomial coefficient at degree {0} is not integral")]
    NotIntegral(usize),
    #[error("not enough power sums: need {needed}, got {got}")]
    TooFewSums { needed: usize, got: usize },
    #[error("trace landed outside the prime field")]
    TraceNotInPrimeField,
    #[error("element does not belong to this field")]
    ForeignElement,
}
