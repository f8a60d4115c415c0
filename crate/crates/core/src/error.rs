use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,
    #[error("the zero vector has no primitive generator")]
    ZeroVector,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameters out of domain for {family}: {detail}")]
    ParamsOutOfDomain { family: String, detail: String },
    #[error("search box too tight: {0}")]
    BoundTooTight(String),
    #[error("polytope is not locally factorial reflexive: {0}")]
    NotReflexive(String),
    #[error("relation matrix has rank {got}, expected {expected}")]
    RelationRankDeficit { expected: usize, got: usize },
    #[error("degree is not a positive integer: {0}")]
    NonIntegerDegree(String),
    #[error("Picard group has torsion (invariant factors {0:?})")]
    PicardTorsion(Vec<i128>),
    #[error("identifier conflict: {0}")]
    MappingConflict(String),
    #[error("malformed expected file: {0}")]
    MalformedExpectedFile(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Errors that signal a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::BoundTooTight(_)
                | Error::NonIntegerDegree(_)
                | Error::RelationRankDeficit { .. }
                | Error::PicardTorsion(_)
                | Error::MappingConflict(_)
        )
    }
}
