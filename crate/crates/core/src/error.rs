use thiserror::Error;

/// Errors raised by the numerical kernels and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("energy {energy} MeV outside the bound-state window ({lower}, 0)")]
    EnergyOutOfWindow { energy: f64, lower: f64 },

    #[error("log-gamma pole at non-positive integer {0}")]
    GammaPole(f64),

    #[error("hypergeometric series did not reach tolerance after {terms} terms")]
    NoConvergence { terms: usize },

    #[error("c-a-b = {0} is too close to an integer for the (1-z) connection formula")]
    DegenerateParameters(f64),

    #[error("adaptive quadrature exhausted its budget (estimated error {error:e})")]
    QuadratureFailure { error: f64 },

    #[error("two roots of one parity share a scan cell near E = {energy} MeV; raise grid_points")]
    BracketCollision { energy: f64 },

    #[error("state labelling failed: {0}")]
    Labeling(String),

    #[error("root {n} not found below scan ceiling {ceiling}")]
    NotFound { n: usize, ceiling: f64 },

    #[error("expected {expected} nodes, counted {found}")]
    NodeMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
