use crate::error::{NomError, Result};

pub const DEFAULT_MAX_PREFERENCES: u64 = 40_320;
pub const DEFAULT_MAX_PROFILES: u64 = 10_000_000;

/// Hard caps on exhaustive enumerations. Exceeding a cap is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Limit on `m!`, the number of strict preferences.
    pub max_preferences: u64,
    /// Limit on any profile or top-vector enumeration.
    pub max_profiles: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_preferences: DEFAULT_MAX_PREFERENCES,
            max_profiles: DEFAULT_MAX_PROFILES,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_preferences: u64::MAX,
            max_profiles: u64::MAX,
        }
    }

    pub fn check_preferences(&self, m: usize) -> Result<u64> {
        let count = factorial(m);
        admit("preferences (m!)", count, self.max_preferences)
    }

    pub fn check_profiles(&self, what: &'static str, count: Option<u64>) -> Result<u64> {
        admit(what, count, self.max_profiles)
    }

    /// Checks `base^exp` against the profile cap.
    pub fn check_power(&self, what: &'static str, base: usize, exp: usize) -> Result<u64> {
        self.check_profiles(what, checked_pow(base, exp))
    }
}

fn admit(what: &'static str, count: Option<u64>, limit: u64) -> Result<u64> {
    match count {
        Some(c) if c <= limit => Ok(c),
        required => Err(NomError::BudgetExceeded {
            what,
            required,
            limit,
        }),
    }
}

pub fn factorial(m: usize) -> Option<u64> {
    (1..=m as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

pub fn checked_pow(base: usize, exp: usize) -> Option<u64> {
    u64::try_from(base).ok()?.checked_pow(u32::try_from(exp).ok()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_cap() {
        let b = Budget::default();
        assert_eq!(b.check_preferences(8), Ok(40_320));
        assert!(b.check_preferences(9).unwrap_err().is_budget());
    }

    #[test]
    fn overflow_is_reported_as_exceeded() {
        let b = Budget::unlimited();
        let err = b.check_power("top vectors", 1 << 20, 10).unwrap_err();
        assert!(matches!(err, NomError::BudgetExceeded { required: None, .. }));
        assert!(b.check_preferences(30).is_err());
    }
}
