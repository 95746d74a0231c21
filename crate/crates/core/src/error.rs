use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A brute-force enumeration would exceed the configured cap on `n`.
    #[error("enumeration of S_{n} refused: exceeds cap n <= {cap}")]
    CapExceeded { n: usize, cap: usize },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An extra brute-force node disagreed with the interpolated polynomial.
    #[error("polynomiality violation at n = {n}: interpolated {predicted}, enumerated {actual}")]
    PolynomialityViolation {
        n: usize,
        predicted: String,
        actual: String,
    },

    /// An exact identity that must hold by construction did not.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
