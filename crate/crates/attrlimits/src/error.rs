use std::fmt;

/// Errors surfaced by limit computations, chart construction and ingestion.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    Domain(String),
    /// Chart construction was given a dataset with no records.
    EmptyDataset,
    /// A p/np record reports more nonconforming units than were inspected.
    CountExceedsSize {
        subgroup: String,
        count: u64,
        size: u64,
    },
    /// A CSV record could not be parsed; `line` is 1-based.
    Csv { line: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::EmptyDataset => write!(f, "no records"),
            Error::CountExceedsSize {
                subgroup,
                count,
                size,
            } => write!(
                f,
                "subgroup {subgroup:?}: count {count} exceeds subgroup size {size}"
            ),
            Error::Csv { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
