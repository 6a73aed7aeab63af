use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("ensemble has no terms")]
    EmptyEnsemble,
    #[error("hypothesis class is empty")]
    EmptyHypothesisClass,
    #[error("plausibility {0} outside [0, 1]")]
    InvalidPlausibility(f64),
    #[error("epsilon {0} outside [0, 1]")]
    EpsilonOutOfRange(f64),
    #[error("constraint set infeasible: residual {residual:e} after {sweeps} sweeps")]
    Infeasible { sweeps: usize, residual: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("all ensemble coefficients are zero")]
    ZeroAlphaNorm,
    #[error("need at least {needed} hypotheses, got {found}")]
    TooFewHypotheses { needed: usize, found: usize },
    #[error("ensemble length {len} is not a multiple of block size {block}")]
    NotDivisible { len: usize, block: usize },
}
