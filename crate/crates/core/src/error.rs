use std::path::PathBuf;

/// Errors raised by the library and mapped onto CLI exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("missing GV data for genus index {r} at degree {beta}")]
    MissingDivisorData { r: u32, beta: u32 },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-integral GV invariant at genus index {r}, degree {d}: {value}")]
    NonIntegral { r: u32, d: u32, value: String },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code: 2 for usage problems, 3 when the data cannot
    /// support the request, 4 when the data contradicts itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::Parse { .. } | Error::Domain(_) | Error::Io { .. } => 2,
            Error::InsufficientData(_) | Error::MissingDivisorData { .. } | Error::OutOfRange(_) => 3,
            Error::NonIntegral { .. } | Error::Inconsistent(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
