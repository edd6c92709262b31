use std::fmt;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Location and description of a syntax error in a gross-number expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset (not byte offset) into the input.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    /// The expression or operation leaves the supported gross-number fragment.
    #[error("unsupported gross-number expression: {0}")]
    GrossUnsupported(String),

    /// Substituting a finite value for grossone produced a non-integer exponent.
    #[error("non-integer exponent after substitution: {0}")]
    GrossNonIntegerExponent(String),

    #[error("lexical error at position {position}: unexpected character {found:?}")]
    Lex { position: usize, found: char },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("domain error: {0}")]
    Domain(String),

    /// Indices of points whose log-log argument `(theta + A - theta_s) / A` is not positive.
    #[error("log-log transform undefined for points {points:?}: (theta + A - theta_s) / A must be positive")]
    Transform { points: Vec<usize> },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("data error: {0}")]
    Data(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::GrossUnsupported(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
