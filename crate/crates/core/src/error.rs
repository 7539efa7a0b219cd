use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is reducible; factor {factor}")]
    Reducible { factor: String },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("computation cap exceeded: {what} ({value} > {limit})")]
    Cap { what: String, value: u64, limit: u64 },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn cap(what: impl Into<String>, value: u64, limit: u64) -> Self {
        Error::Cap { what: what.into(), value, limit }
    }
}
