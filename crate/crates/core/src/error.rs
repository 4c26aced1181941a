use thiserror::Error;

/// Errors produced by the solvers, bound evaluators and simulators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root not converged after {iterations} iterations (bracket width {width:e})")]
    MaxIterations { iterations: usize, width: f64 },

    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("root of {equation} not bracketed on scanned range [{lo}, {hi}]")]
    RootNotBracketed { equation: &'static str, lo: f64, hi: f64 },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::OutOfDomain { name, value, domain }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
