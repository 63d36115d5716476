use thiserror::Error;

/// Errors produced by the numerical kernels, channel models and sweep driver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration object (quadrature, Monte Carlo, sweep) is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Adaptive quadrature hit its depth or interval limit before meeting tolerance.
    #[error("quadrature did not converge: best estimate {estimate} with error {error}")]
    NonConvergence { estimate: f64, error: f64 },

    /// The integrand returned NaN or an infinity.
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },

    /// An internal cross-check between two evaluation routes disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
