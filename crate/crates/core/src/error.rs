use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not of full rank (rank {rank}, required {required})")]
    NotFullRank { rank: usize, required: usize },

    #[error("non-integral h-vector entry h_{index} = {value}")]
    NonIntegralH { index: usize, value: String },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {required} matrices requested, budget is {budget} (try --mode mc)")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
