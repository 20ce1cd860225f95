use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} exceeds the range guard of {limit} (override with TRISUM_MAX_INDEX)")]
    IndexOutOfRange { index: i64, limit: u64 },
    #[error("{0}")]
    Domain(String),
    #[error("singular weight: {0}")]
    Singular(String),
    #[error("series not expandable: denominator vanishes at x = 0")]
    NotExpandable,
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Evaluation status carried by reports and CLI output records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    DomainError,
    Singular,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::DomainError => "domain_error",
            Status::Singular => "singular",
            Status::Indeterminate => "indeterminate",
        }
    }
}

impl Error {
    pub fn status(&self) -> Status {
        match self {
            Error::Singular(_) | Error::NotExpandable => Status::Singular,
            Error::Indeterminate(_) => Status::Indeterminate,
            Error::IndexOutOfRange { .. }
            | Error::Domain(_)
            | Error::InvalidSpec(_)
            | Error::Parse(_) => Status::DomainError,
        }
    }
}
