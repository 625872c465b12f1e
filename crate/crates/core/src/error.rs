use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet 0..{k}")]
    InvalidLetter { letter: usize, k: usize },

    #[error("state {state} is outside the state range 0..{n}")]
    InvalidState { state: usize, n: usize },

    #[error("matrix sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{parameter} = {value} exceeds the configured limit {limit}; {hint}")]
    Capacity {
        parameter: &'static str,
        value: u128,
        limit: u128,
        hint: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("placement policy error: {0}")]
    Policy(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
