use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("covariance matrix is singular (det = {det:e})")]
    SingularCovariance { det: f64 },

    #[error("diagonal blocks differ by {deviation:e}; expected oscillator-exchange symmetric covariance")]
    AsymmetricBlocks { deviation: f64 },

    #[error("negative discriminant {discriminant:e} in symplectic spectrum (unphysical matrix)")]
    NegativeDiscriminant { discriminant: f64 },

    #[error("quadrature did not converge after {evaluations} evaluations (error estimate {error:e}, target {target:e})")]
    QuadratureNotConverged {
        evaluations: usize,
        error: f64,
        target: f64,
    },

    #[error("config error for `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("at t = {t} ns: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    /// Configuration and I/O problems, as opposed to numerical failures.
    pub fn is_config(&self) -> bool {
        match self {
            Error::InvalidParameter { .. } | Error::Config { .. } | Error::Io { .. } => true,
            Error::AtTime { source, .. } => source.is_config(),
            _ => false,
        }
    }

    pub fn at_time(self, t: f64) -> Self {
        Error::AtTime {
            t,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
