use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("factorization budget exceeded for {0}")]
    FactorizationBudget(BigInt),
    #[error("exponent must be at least 2, got {0}")]
    InvalidExponent(i64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("desk-scale limit: degree {0} exceeds 8")]
    DegreeLimit(usize),
    #[error("f has multiple zeros")]
    NotSquarefree,
    #[error("root certification failed: {0}")]
    RootCertification(String),
    #[error("defining polynomial is reducible")]
    Reducible,
    #[error("defining polynomial must be monic with integer coefficients")]
    NotMonicIntegral,
    #[error("cannot certify maximal order")]
    CannotCertifyMaximalOrder,
    #[error("supplied discriminant data inconsistent: {0}")]
    InconsistentDiscriminant(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported prime: index divisor {0}")]
    IndexDivisor(BigInt),
    #[error("{0} is not a supported prime")]
    NotPrime(BigInt),
    #[error("valuation precision cap exceeded at p = {0}")]
    PrecisionCap(BigInt),
    #[error("not an S-integer: {0}")]
    NotSInteger(String),
    #[error("b must be nonzero")]
    ZeroB,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("solver supports K = Q only")]
    NonRationalField,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
