use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("substitution hits a pole: a denominator factor vanishes")]
    Pole,
    #[error("variable sets differ")]
    VarSetMismatch,
    #[error("alphabet mismatch in inner product")]
    AlphabetMismatch,
    #[error("lambda-ring evaluation requires integer coefficients")]
    NonIntegerCoeff,
    #[error("{0} is not a {1}-core")]
    NotRCore(String, u32),
    #[error("v-vector form requires odd modulus, got r = {0}")]
    EvenModulus(u32),
    #[error("maya position {0} already occupied")]
    OccupiedSlot(i64),
    #[error("plethystic Log requires constant term 1")]
    LogConstantTerm,
    #[error("plethystic Exp requires constant term 0")]
    ExpConstantTerm,
    #[error("degree {0} exceeds bound {1}")]
    DegreeOverflow(u32, u32),
    #[error("cache format error: {0}")]
    CacheFormat(String),
    #[error("evaluation point hits a zero denominator")]
    EvalDenominatorZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EngineError>;
