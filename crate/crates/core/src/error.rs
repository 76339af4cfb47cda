use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The bisector derivative showed no sign change on the search interval,
    /// contradicting the existence of a non-trivial equilibrium.
    #[error("no sign change of u' on [{lo}, {hi}] for n = {n}, beta = {beta}")]
    NoSignChange { n: usize, beta: f64, lo: f64, hi: f64 },

    /// An iterative method failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by bad input rather than by the numerics.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
