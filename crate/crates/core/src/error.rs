use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation. `requirement` names the
    /// violated precondition, e.g. `"gamma > 2 (Class-I)"`.
    #[error("domain error: {requirement} violated (got {got})")]
    Domain { requirement: &'static str, got: String },

    #[error("{what} did not converge after {terms} terms (best estimate {estimate:e}, error estimate {error:e})")]
    NonConvergence { what: &'static str, terms: usize, estimate: f64, error: f64 },

    #[error("{what} overflows the representable range")]
    Overflow { what: &'static str },

    #[error("{what} underflows the representable range")]
    Underflow { what: &'static str },

    #[error("quadrature rule too small: {0}")]
    RuleTooSmall(String),

    #[error("tridiagonal eigensolver failed to converge for eigenvalue {index}")]
    EigenNoConvergence { index: usize },

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn domain(requirement: &'static str, got: impl std::fmt::Display) -> Self {
        Error::Domain { requirement, got: got.to_string() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
