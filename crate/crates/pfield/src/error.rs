use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution produced a zero denominator")]
    IndeterminateResult,
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("empty product")]
    EmptyProduct,
    #[error("at least three roots are required")]
    TooFewRoots,
    #[error("linear forms are not pairwise distinct")]
    NotDistinctForms,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unresolved input: {0}")]
    UnresolvedInput(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("roots are not available over the base field")]
    RootsUnavailable,
    #[error("degree too small")]
    DegreeTooSmall,
    #[error("flag is not flabby")]
    NotFlabby,
    #[error("degree mismatch")]
    DegreeMismatch,
    #[error("identity check failed: {0}")]
    IdentityFails(String),
    #[error("h is constant")]
    ConstantH,
    #[error("denominator is not available in factored form")]
    UnfactoredDenominator,
    #[error("not a product of linear forms: {0}")]
    NotFactored(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
