use thiserror::Error;

/// Errors raised by the numerical routines. The message names the module
/// that produced it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("specfun: {0}")]
    Domain(String),

    #[error("jacobi: {0}")]
    Basis(String),

    #[error("jacobi: eigen solve for {n}-point rule did not converge")]
    Convergence { n: usize },

    #[error("corrections: {0}")]
    InvalidScheme(String),

    #[error("corrections: singular denominator ({0})")]
    Singular(String),

    #[error("fr1d: {0}")]
    Operators(String),

    #[error("vonneumann: {0}")]
    Spectral(String),

    #[error("vonneumann: convergence rate unavailable ({0})")]
    RateUnavailable(String),

    #[error("turbulence: {0}")]
    Turbulence(String),

    #[error("turbulence: no resonance peak ({0})")]
    NoPeak(String),

    #[error("turbulence: no plateau ({0})")]
    NoPlateau(String),

    #[error("turbulence: no cut-off crossing ({0})")]
    NoCrossing(String),
}

pub type Result<T> = std::result::Result<T, Error>;
