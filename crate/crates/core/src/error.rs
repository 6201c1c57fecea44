use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("spin quantum number must be a positive half-integer, got {0}")]
    InvalidSpin(f64),
    #[error("projection {m} is not a level of spin {j}")]
    InvalidProjection { j: String, m: f64 },
    #[error("matrix dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("tables cannot be composed: {0}")]
    IncompatibleTables(String),
    #[error("the tabulated phase convention is only defined for spin 2 (got spin {0})")]
    TabulatedConventionUnavailable(String),
    #[error("Hermitian eigensolver did not converge after {0} sweeps")]
    EigenNoConvergence(usize),
    #[error("closed forms are defined for projections -2..=2, got m_i={m_i}, m_f={m_f}")]
    ClosedFormOutOfRange { m_i: i32, m_f: i32 },
    #[error("invalid measurement chain: {0}")]
    InvalidChain(String),
    #[error("{0} must be at least 1")]
    ZeroSamples(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
