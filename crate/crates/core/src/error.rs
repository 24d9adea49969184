use thiserror::Error;

/// Errors produced by the library.
///
/// Variants are grouped by how a front end should react: malformed input,
/// violated mathematical hypotheses, exhausted resource caps, and numerical
/// failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("resource cap exceeded: {what} ({requested} > {cap})")]
    ResourceCap {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("root finding did not converge after {iterations} iterations (max correction {max_correction:e})")]
    NonConvergence { iterations: usize, max_correction: f64 },

    #[error("singular integrand: root {root} lies within {margin:e} of the lemniscate; use the closed form")]
    SingularIntegrand { root: String, margin: f64 },

    #[error("theta step too coarse at node {node}: displacement {displacement:e} exceeds half the branch gap {gap:e}; increase n_theta")]
    StepTooCoarse { node: usize, displacement: f64, gap: f64 },

    #[error("no cyclotomic divisor found up to index {max_index}")]
    IndexExhausted { max_index: u64 },
}

impl Error {
    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::Degenerate(_) => "degenerate",
            Error::HypothesisViolation(_) => "hypothesis_violation",
            Error::ResourceCap { .. } => "resource_cap",
            Error::NonConvergence { .. } => "non_convergence",
            Error::SingularIntegrand { .. } => "singular_integrand",
            Error::StepTooCoarse { .. } => "step_too_coarse",
            Error::IndexExhausted { .. } => "index_exhausted",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
