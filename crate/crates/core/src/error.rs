use thiserror::Error;

/// Errors raised by polytope, colouring, cover and pipeline operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("facet index {index} out of range for a polytope with {facets} facets")]
    FacetOutOfRange { index: usize, facets: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid facet matching: {0}")]
    InvalidMatching(String),

    #[error("colouring has {got} entries but the polytope has {expected} facets")]
    LengthMismatch { expected: usize, got: usize },

    #[error("colour {colour} does not fit in rank {rank}")]
    ColourOutOfRange { colour: u128, rank: usize },

    #[error("rank {0} is outside the supported range 1..=128")]
    RankOutOfRange(usize),

    #[error("improper colouring: colours at vertex {vertex} ({facets:?}) are linearly dependent")]
    Improper { vertex: usize, facets: Vec<usize> },

    #[error("adjacent facets {0} and {1} receive the same colour")]
    ChromaticViolation(usize, usize),

    #[error("cover of image dimension {0} is too large to build explicitly")]
    CoverTooLarge(usize),

    #[error("Euler characteristic {0} is not an integer")]
    NonIntegralEuler(String),

    #[error("invalid hypersurface component: {0}")]
    InvalidComponent(String),

    #[error("unknown base cell type: {0}")]
    UnknownCell(String),

    #[error("search failed: {0}")]
    Search(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
