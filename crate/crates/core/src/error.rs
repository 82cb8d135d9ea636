use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Structural(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource budget exceeded at {what}: {detail}")]
    Budget { what: String, detail: String },
    #[error("image term {0} is not in the codomain slice")]
    MissingCodomainKey(String),
    #[error("element does not belong to the {0} complex")]
    Membership(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("chain mismatch: {0}")]
    ChainMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
