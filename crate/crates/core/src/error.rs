use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} = {value} exceeds the supported maximum of {max}")]
    CapExceeded { what: &'static str, value: u64, max: u64 },

    #[error("enumeration needs {required} items but the budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generator rows are linearly dependent (rank {rank} < {rows} rows)")]
    DependentRows { rank: usize, rows: usize },

    #[error("weight enumerator is not the enumerator of a code: {0}")]
    CorruptEnumerator(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io { path: path.display().to_string(), message: err.to_string() }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
