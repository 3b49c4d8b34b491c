use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("item {index}: weight must be positive")]
    NonPositiveWeight { index: usize },
    #[error("item {index}: profit must be positive")]
    NonPositiveProfit { index: usize },
    #[error("negative capacity {0}")]
    NegativeCapacity(i64),
    #[error("operation requires a monotone sequence")]
    NotMonotone,
    #[error("value {value} outside [0, {bound}]")]
    OutOfRange { value: i64, bound: i64 },
    #[error("window parameter {0} out of range")]
    BadWindow(i64),
    #[error("instance is not balanced: t/w_max = {cap_ratio:.3}, OPT~/p_max = {profit_ratio:.3}")]
    Imbalanced { cap_ratio: f64, profit_ratio: f64 },
    #[error("instance too large for exhaustive search (n = {0})")]
    TooLarge(usize),
    #[error("gadget needs n >= 2, got {0}")]
    GadgetTooSmall(usize),
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("expected {expected} items, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("all {attempts} attempts exceeded the time budget")]
    BudgetExhausted { attempts: usize },
    #[error("inconsistent witness data: {0}")]
    Witness(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable numeric code used by the command line front end.
    pub fn code(&self) -> u8 {
        match self {
            Error::Malformed { .. } => 10,
            Error::NonPositiveWeight { .. } => 11,
            Error::NonPositiveProfit { .. } => 12,
            Error::CountMismatch { .. } => 13,
            Error::NegativeCapacity(_) => 14,
            _ => 20,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
