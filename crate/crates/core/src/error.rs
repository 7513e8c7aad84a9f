use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("coefficient level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: usize, got: usize },
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("input outside the operation's domain: {0}")]
    Domain(String),
    #[error("ball of {requested} words exceeds the cap of {cap}")]
    ResourceCap { requested: u128, cap: u128 },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
