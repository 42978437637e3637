use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension polynomial is reducible over its base")]
    Reducible,
    #[error("invalid minimal polynomial: {0}")]
    BadModulus(String),
    #[error("field descriptor mismatch")]
    Mismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic 3 has no primitive cube root of unity")]
    NoPrimitiveCubeRoot,
    #[error("not decidable: {0}")]
    Undecidable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("characteristic {found} does not fit: {requirement}")]
    Characteristic { found: u64, requirement: String },
    #[error("rule {0} does not decrease the monomial order")]
    NotDecreasing(String),
    #[error("{0}")]
    Precondition(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
}

/// Violations of a hypothesis required by one of the structure theorems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("alpha must be nonzero")]
    AlphaZero,
    #[error("the base field must contain a primitive cube root of unity")]
    NoRho,
    #[error("characteristic {0} is not supported by this family")]
    WrongCharacteristic(u64),
    #[error("the invariant D vanishes; the simple-image classification requires D != 0")]
    DZero,
    #[error("alpha is a cube in the base field, so F[x: x^3 = alpha] is not a field")]
    AlphaIsCube,
    #[error("cannot decide whether alpha is a cube here; pass --assert-alpha-not-cube to acknowledge it")]
    AlphaCubeUnknown,
    #[error("point ({0}) does not lie on the curve")]
    NotOnCurve(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("presentation shape not supported: {0}")]
    Shape(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, offset: usize) -> Self {
        ParseError { message: message.into(), offset }
    }
}
