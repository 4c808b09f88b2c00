use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gcd of zero polynomials")]
    GcdOfZero,
    #[error("{0}: zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error(
        "exact resultant needs deg a + deg b = {total} <= {limit}; use hadamard_log_resultant for a magnitude bound"
    )]
    ResultantTooLarge { total: usize, limit: usize },
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("reduce to squarefree first (squarefree_part)")]
    NotSquarefree,
    #[error("system vanishes mod {0}")]
    SystemVanishes(u64),
    #[error("search space {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("empty system")]
    EmptySystem,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("modular gcd did not stabilise after {0} primes")]
    GcdNotConverged(usize),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
