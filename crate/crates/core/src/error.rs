use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("diagram dimensions must be positive, got {m}x{n}")]
    EmptyShape { m: usize, n: usize },

    #[error("expected {expected} cells, found {found}")]
    CellCount { expected: usize, found: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("label index {label} is out of range for {count} labels")]
    InvalidLabel { label: usize, count: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("vector is not in the kernel of {0}")]
    NotInKernel(&'static str),

    #[error(
        "enumeration of {cells} cells exceeds the limit of {limit}; use the closed formula instead"
    )]
    EnumerationLimit { cells: usize, limit: usize },

    #[error("series has constant term {found}, expected {expected}")]
    ConstantTerm { expected: i64, found: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
