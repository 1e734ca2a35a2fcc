use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree j = {two_j}/2 is not an integer")]
    NonIntegerDegree { two_j: u32 },

    #[error("invalid angular momentum indices: {0}")]
    InvalidIndex(String),

    #[error(
        "grid {n_theta}x{n_phi} is too coarse for degree {degree}: need at least {min_theta}x{min_phi}"
    )]
    GridTooSmall {
        degree: u32,
        n_theta: usize,
        n_phi: usize,
        min_theta: usize,
        min_phi: usize,
    },

    #[error("state is not real: worst reality residual {residual:.3e}")]
    NotRealState { residual: f64 },

    #[error("antipodal pairing failed: worst residual {worst:.3e}")]
    PairingFailure { worst: f64 },

    #[error("the null state has no constellation")]
    NullState,

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
