use thiserror::Error;

/// Errors raised by the analysis pipeline.
///
/// Vertex and pair indices carried by variants are 0-based.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector encountered ({context})")]
    ZeroVector { context: String },

    #[error("vector not in range of the frame adjoint (relative residual {residual:.3e})")]
    NotInRange { residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("entry ({row}, {col}) is nonzero outside the support pattern")]
    PatternViolation { row: usize, col: usize },

    #[error("ordering is not a perfect elimination ordering (fails at vertex {vertex})")]
    InvalidOrdering { vertex: usize },

    #[error("negative pivot {value:.3e} at vertex {vertex} during peeling")]
    NegativePivot { vertex: usize, value: f64 },

    #[error("search budget exceeded in {search}: {detail}")]
    SearchBudgetExceeded { search: &'static str, detail: String },

    #[error("states are not mutually orthogonal: offending pairs {pairs:?}")]
    NotMutuallyOrthogonal { pairs: Vec<(usize, usize)> },

    #[error("Bob states on outcome support {support:?} are not mutually orthogonal")]
    NonOrthogonalBobClique { support: Vec<usize> },

    #[error("invalid sandwich bounds: {0}")]
    InvalidSandwich(String),

    #[error("invalid clique cover: {0}")]
    InvalidCover(String),

    #[error("invalid family specification: {0}")]
    InvalidSpec(String),

    #[error("family invariant violated: {0}")]
    AssertionFailure(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(search: &'static str, detail: impl Into<String>) -> Self {
        Error::SearchBudgetExceeded {
            search,
            detail: detail.into(),
        }
    }
}
