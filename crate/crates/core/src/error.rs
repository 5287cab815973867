use std::fmt;

use thiserror::Error;

/// Syntax error in the polynomial text grammar or a description file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

/// Which budget a computation ran out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Degree,
    SPairs,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Degree => f.write_str("polynomial degree"),
            Resource::SPairs => f.write_str("S-pair count"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable sets differ: {0}")]
    RingMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exponent overflow")]
    Overflow,
    #[error("resource cap exceeded: {resource} limit {limit}")]
    ResourceCap { resource: Resource, limit: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
