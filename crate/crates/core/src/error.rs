use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input document: bad shape, missing field or unparsable value.
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),

    /// Input is well formed but mathematically invalid (not an involution,
    /// not a subalgebra, degenerate form, ...).
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("matrix does not square to the identity")]
    NotInvolution,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("elements live in different ambient algebras")]
    AmbientMismatch,

    /// A property that holds by theory failed on a computed object.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema { .. } | Error::Io { .. } => 2,
            Error::Jacobi(..) | Error::Validation(_) | Error::NotInvolution => 3,
            Error::Dimension(_) | Error::AmbientMismatch | Error::Invariant(_) => 4,
        }
    }
}
