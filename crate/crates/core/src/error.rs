use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group closure exceeds the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group is not a p-group (order {order})")]
    NotPGroup { order: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not nilpotent: elements of {prime}-power order do not form a subgroup")]
    NotNilpotent { prime: u64 },

    #[error("unsupported prime {prime}: {reason}")]
    UnsupportedPrime { prime: u64, reason: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("value is not rational")]
    NotRational,

    #[error("class functions belong to different groups")]
    GroupMismatch,

    #[error("class function is not defined on the expected subgroup")]
    SubgroupMismatch,

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("no monomial source found for character of degree {degree}")]
    NoSourceFound { degree: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("row {row} out of range (table has {rows} rows)")]
    RowOutOfRange { row: usize, rows: usize },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
