use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),

    #[error("arrow `{arrow}` refers to missing vertex `{vertex}`")]
    DanglingArrow { arrow: String, vertex: String },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("split witness failed verification: {0}")]
    SplitVerification(String),

    #[error("modules live over different quivers: {0}")]
    QuiverMismatch(String),

    #[error("incompatible chain at position {index}: {reason}")]
    IncompatibleChain { index: usize, reason: String },

    #[error("invalid module data: {0}")]
    InvalidModule(String),

    #[error("morphism squares do not commute at arrow `{arrow}`, degree {degree}")]
    NotAMorphism { arrow: String, degree: usize },

    #[error("format error at {location}: {message}")]
    Format { location: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn format(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            location: location.into(),
            message: message.into(),
        }
    }
}
