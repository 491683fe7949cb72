use thiserror::Error;

use crate::rules::Violation;

pub type Result<T, E = NomError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NomError {
    #[error("enumeration budget exceeded: {what} needs {} items, limit is {limit}", required.map_or_else(|| "more than 2^64".to_string(), |r| r.to_string()))]
    BudgetExceeded {
        what: &'static str,
        /// `None` when the count overflows `u64`.
        required: Option<u64>,
        limit: u64,
    },
    #[error("top and bottom must differ (both are {0})")]
    EqualTopBottom(usize),
    #[error("cannot pick a best or worst element of an empty set")]
    EmptySet,
    #[error("operation requires a {expected} alternative space")]
    WrongSpace { expected: &'static str },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid preference: {0}")]
    InvalidPreference(String),
    #[error("closed form assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("no closed form for the {0} family")]
    UnsupportedFamily(&'static str),
    #[error("hypothesis not verified: {0}")]
    HypothesisNotVerified(String),
    #[error("invalid rule: {}", format_violations(.0))]
    InvalidRule(Vec<Violation>),
}

impl NomError {
    pub fn is_budget(&self) -> bool {
        matches!(self, NomError::BudgetExceeded { .. })
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
