use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector is not a valid ray or inequality")]
    ZeroVector,

    #[error("unknown variety `{0}`")]
    UnknownVariety(String),

    #[error("variety `{0}` has no pipeline recipe")]
    NoRecipe(String),

    #[error("operation not supported on this lattice kind")]
    UnsupportedLattice,

    #[error("cone is not pointed (lineality dimension {0})")]
    NotPointed(usize),

    #[error("table parse error at line {line}: {msg}")]
    TableParse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
