use thiserror::Error;

use crate::lowrank::LowRankFactor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function pole at argument {argument}")]
    Pole { argument: f64 },

    #[error("pivoted Cholesky did not reach tolerance within {max_rank} steps (residual {residual:e})")]
    RankCapExceeded {
        max_rank: usize,
        residual: f64,
        partial: Box<LowRankFactor>,
    },

    #[error("matrix is not positive semidefinite: diagonal entry {index} fell to {value:e}")]
    NotPsd { index: usize, value: f64 },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
