use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("facet references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("sigma override on non-face {0:?}")]
    OverrideOnNonFace(Vec<String>),
    #[error("sigma element {value} outside 1..={d}")]
    SigmaOutOfRange { value: usize, d: usize },
    #[error("vertex `{0}` has an empty carrier")]
    EmptyVertexSigma(String),
    #[error("{0} vertices requested; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0:?} is not a face")]
    NotAFace(Vec<String>),
    #[error("triangulation is not quasi-geometric; no special l.s.o.p. exists")]
    NotQuasiGeometric,
    #[error("exhausted {attempts} specialization attempts: {last}")]
    ExhaustedRetries { attempts: usize, last: String },
    #[error("non-regular-sequence specialization: {what} has Hilbert function {found:?}, expected {expected:?}")]
    HilbertMismatch {
        what: &'static str,
        expected: Vec<i64>,
        found: Vec<i64>,
    },
    #[error("l.s.o.p. certificate fails on face {0:?}")]
    CertificateFailed(Vec<usize>),
    #[error("field specification: {0}")]
    Field(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Failures that indicate a bug or an unsound specialization rather than
    /// bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }

    /// Failures that a fresh random specialization may cure.
    pub fn is_resample_signal(&self) -> bool {
        matches!(
            self,
            Error::HilbertMismatch { .. } | Error::CertificateFailed(_)
        )
    }
}
