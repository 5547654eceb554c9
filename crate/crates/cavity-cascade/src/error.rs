//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical precondition was violated (negative length, mode index 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The cascade prefactor denominator vanishes for this (mode, branch).
    ///
    /// The closed form diverges at these points, so they are reported rather
    /// than regularized.
    #[error("singular configuration: prefactor denominator vanishes at mode m={mode}, branch {branch:+}")]
    SingularConfiguration { mode: u32, branch: i8 },

    /// A suppression ratio was requested against a zero reference.
    #[error("invalid reference: {0}")]
    InvalidReference(String),

    /// Every grid point of a scan failed (e.g. all singular).
    #[error("no feasible point: {0}")]
    NoFeasiblePoint(String),

    /// Configuration file could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    /// Output could not be written.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
