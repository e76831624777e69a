use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible over GF({0})")]
    Reducible(u64),
    #[error("field of order {order} exceeds the configured cap {cap}")]
    FieldTooLarge { order: u128, cap: u64 },
    #[error("zero has no inverse")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("subfield degree {sub} does not divide {degree}")]
    NotASubfield { sub: usize, degree: usize },
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),
    #[error("element {0:?} does not belong to the group")]
    NotAnElement(Vec<u64>),
    #[error("characteristic {0} is not allowed here: {1}")]
    Characteristic(u64, &'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("nontrivial stabilizer at the {0}")]
    NontrivialStabilizer(&'static str),
    #[error("candidate is not planar (difference map at h = {0} is not a bijection)")]
    NotPlanar(u32),
    #[error("{0}")]
    Unsupported(String),
    #[error("budget exhausted")]
    BudgetExhausted,
    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
