use thiserror::Error;

/// Errors raised by the lattice builders, solvers and measurement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("lattice needs an odd number of sites >= 3, got {0}")]
    InvalidSiteCount(usize),

    #[error("potential has {got} samples but the grid has {expected} sites")]
    PotentialLength { expected: usize, got: usize },

    #[error("potential sample {index} is not finite")]
    NonFinitePotential { index: usize },

    #[error("Robin parameter {0} is not finite; use the Dirichlet flag instead")]
    NonFiniteRobin(f64),

    #[error("wall-centered stencil is singular for gamma = {gamma} at spacing {spacing}")]
    StencilPole { gamma: f64, spacing: f64 },

    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("{what} did not converge: {detail}")]
    NoConvergence { what: &'static str, detail: String },

    #[error("no roots found in (0, {k_max}] at scan resolution {resolution:e}")]
    EmptyScan { k_max: f64, resolution: f64 },

    #[error("expected {expected} momentum roots in the zone window, found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("the lattice energy condition needs finite Robin parameters on both walls")]
    DirichletUnsupported,

    #[error("k = {k} is not a momentum root (boundary residual {residual:e})")]
    NotARoot { k: f64, residual: f64 },

    #[error("penalty mu must be non-negative, got {0}")]
    NegativePenalty(f64),

    #[error("invalid level {0}")]
    InvalidLevel(i64),

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("closed-form momentum outcomes k = pi n / L need lambda_+ = lambda_-, got ell = ({plus}, {minus})")]
    UnequalExtension { plus: f64, minus: f64 },

    #[error("cutoff {cutoff} leaves an estimated tail of {tail:e} (limit {limit:e})")]
    CutoffTooSmall { cutoff: f64, tail: f64, limit: f64 },

    #[error("convergence study: {0}")]
    ConvergencePrecondition(String),

    #[error("configuration: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotHermitian { .. }
            | Error::NoConvergence { .. }
            | Error::EmptyScan { .. }
            | Error::RootCount { .. }
            | Error::NotARoot { .. }
            | Error::NotNormalized { .. }
            | Error::StencilPole { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
