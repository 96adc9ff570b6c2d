use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{value} is not a unit modulo {p}^{exponent}")]
    NonUnit { value: String, p: u64, exponent: u32 },

    #[error("{0} is outside the domain 1 + pZp of the logarithm")]
    OutOfDomain(String),

    #[error("{0} is not in the image of the character")]
    NotInImage(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("character mismatch between networks")]
    CharacterMismatch,

    #[error("unsupported compilation: {0}")]
    UnsupportedCompilation(String),

    #[error("frontier overflow at level {level}: {size} witnesses exceed the budget of {budget}")]
    FrontierOverflow {
        /// last fully completed level
        level: u32,
        size: usize,
        budget: usize,
    },

    #[error("enumeration of {needed} points exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
}
