use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("invalid vertex name `{0}` (names must be nonempty and contain no whitespace)")]
    InvalidVertexName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate bundle {0} -> {1}")]
    DuplicateBundle(String, String),
    #[error("bundle {0} -> {1} has multiplicity 0")]
    ZeroMultiplicity(String, String),
    #[error("graph has {found} vertices, more than the supported {limit}")]
    TooManyVertices { found: usize, limit: usize },
    #[error("vertex name collision: `{0}`")]
    NameCollision(String),
    #[error("set {0} is not hereditary and saturated")]
    NotHereditarySaturated(String),
    #[error("pair is not admissible: {0}")]
    NotAdmissible(String),
    #[error("invalid vertex-set pair: {0}")]
    InvalidPair(String),
    #[error("vertex `{0}` lies inside X ∪ Y")]
    VertexInPair(String),
    #[error("graph has an infinite emitter `{0}`; the row-finite criterion does not apply")]
    InfiniteEmitter(String),
    #[error("outside oracle scope: {0}")]
    OracleScope(String),
    #[error("elements belong to different graphs")]
    MixedGraphs,
    #[error("path count overflowed 64 bits")]
    CountOverflow,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Errors that come from a size limit or an unsupported input class,
    /// as opposed to malformed data.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::TooManyVertices { .. } | Error::OracleScope(_) | Error::InfiniteEmitter(_) | Error::CountOverflow
        )
    }
}
