use thiserror::Error;

/// Failures of field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable t{index} outside the field's {count} t-variables")]
    VariableOutOfRange { index: usize, count: usize },
}

/// Failures of the text grammars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at offset {offset}")]
    UnexpectedChar { found: char, offset: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at offset {offset}: {message}")]
    Unexpected { offset: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Errors raised by the algebraic operations themselves.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("input must be homogeneous")]
    NotHomogeneous,
    #[error("exponent overflow computing {base}^{exp}")]
    ExponentOverflow { base: u64, exp: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance needs {size} enumerations, above the cap of {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("the zero element has no valuation")]
    ZeroValuation,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
