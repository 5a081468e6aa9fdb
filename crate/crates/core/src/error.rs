use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: relative asymmetry {relative_asymmetry:.3e} exceeds {tolerance:.1e}")]
    NotHermitian {
        relative_asymmetry: f64,
        tolerance: f64,
    },

    #[error("matrix is not positive definite: eigenvalues span [{min_eigenvalue:.6e}, {max_eigenvalue:.6e}]")]
    NotPositiveDefinite {
        min_eigenvalue: f64,
        max_eigenvalue: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("transform is singular or ill-conditioned (condition number {condition:.3e})")]
    SingularTransform { condition: f64 },

    #[error("matrix exponential overflows: largest eigenvalue {max_eigenvalue:.6e}")]
    Overflow { max_eigenvalue: f64 },

    #[error("Hermitian eigen-solver did not converge (dim {dim}, Frobenius norm {frobenius_norm:.6e}, max |entry| {max_abs_entry:.6e})")]
    EigenNonConvergence {
        dim: usize,
        frobenius_norm: f64,
        max_abs_entry: f64,
    },

    #[error("insufficient degrees of freedom: K = {k} < p = {p}")]
    InsufficientDof { p: usize, k: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("sample list is empty")]
    EmptySamples,

    #[error("invalid options: {0}")]
    InvalidOptions(String),

    #[error("at least 2 replications are required, got {0}")]
    TooFewReplications(usize),

    #[error("unsupported dimension p = {0}; only p = 1 has closed-form scalar risks")]
    UnsupportedDimension(usize),

    #[error("replication {index}: {source}")]
    Replication {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    /// Process exit status for the command-line front end: 2 for
    /// configuration problems, 3 for numeric or domain failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::InvalidOptions(_)
            | Error::TooFewReplications(_)
            | Error::UnsupportedDimension(_)
            | Error::Io(_)
            | Error::Serialization(_) => 2,
            Error::Replication { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
