use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: series did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("{what}: lower parameter is a non-positive integer")]
    PoleParameter { what: &'static str },

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("{what}: result overflows f64")]
    Overflow { what: &'static str },

    #[error("{what}: imaginary residue {imag:e} exceeds tolerance for real part {real:e}")]
    ResidualImaginary {
        what: &'static str,
        real: f64,
        imag: f64,
    },

    #[error("input lies on a pole of the identity: {0}")]
    PoleInput(String),

    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("unknown {kind} '{name}' (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
}
