use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan datum: {0}")]
    InvalidCartan(String),
    #[error("arguments belong to different Cartan data")]
    MixedCartan,
    #[error("reflection along an imaginary root")]
    ImaginaryRoot,
    #[error("bound too small: {0}")]
    BoundTooSmall(String),
    #[error("block is critical")]
    Critical,
    #[error("criticality undecidable here: {0}")]
    Undecidable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("block is singular; operation requires a regular block")]
    NotRegular,
    #[error("level class not detected: {0}")]
    LevelUndetected(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Errors that stem from the mathematics of the input rather than from
    /// malformed input.
    pub fn is_math_rejection(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::Io(_) | Error::InvalidCartan(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
