use thiserror::Error;

/// Errors surfaced by the simulation and analysis primitives.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible regime: {0}")]
    InfeasibleRegime(String),

    #[error("potential undefined: distorted state with p = 0")]
    UndefinedPotential,
}

pub type Result<T> = std::result::Result<T, Error>;
