use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("cannot divide by {0}: valuation is not certified finite")]
    DivByUnknown(String),
    /// `widen` is the estimated number of extra exponents of precision needed.
    #[error("precision exhausted: {what} (widen the window by at least {widen})")]
    PrecisionExhausted { what: String, widen: u32 },
    #[error("invalid slope class: {0}")]
    InvalidClass(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{0} does not lie in the parabolic subgroup generated by {1}")]
    NotInParabolic(String, String),
    #[error("search space of {size} evaluations exceeds the budget of {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precision(what: impl Into<String>, widen: u32) -> Self {
        Error::PrecisionExhausted { what: what.into(), widen: widen.max(1) }
    }
}
