use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of a formula or type.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its panel budget before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {panels} panels")]
    Quadrature { estimate: f64, error: f64, panels: usize },

    /// The function has the same sign at both ends of the bracket.
    #[error("root not bracketed: f({lo}) = {f_lo:e}, f({hi}) = {f_hi:e}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// Bisection hit its iteration cap.
    #[error("bisection did not converge in {iterations} iterations (width {width:e})")]
    Convergence { iterations: usize, width: f64 },

    /// A linear solve failed on a matrix that was expected to be full rank.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Malformed or incomplete run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
