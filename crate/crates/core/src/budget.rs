use crate::error::{Error, Result};

/// Environment variable that overrides every enumeration budget.
pub const BUDGET_ENV: &str = "GRADERING_BUDGET";

/// Default cap on enumerated items (elements, pairs, solution points).
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Caps for the exhaustive enumerations.
///
/// Every enumeration checks its size up front and refuses with
/// [`Error::BudgetExceeded`] instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Homogeneous elements or ring elements listed in one go.
    pub elements: u64,
    /// Element pairs visited by a quantifier over two arguments.
    pub pairs: u64,
    /// Points of an affine solution space scanned exhaustively.
    pub solution_points: u64,
    /// Degree-shift assignments tried when the solution space is too large.
    pub shift_cases: u64,
    /// Candidate additive maps enumerated for a sweep.
    pub map_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::uniform(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn uniform(limit: u64) -> Self {
        Budget {
            elements: limit,
            pairs: limit,
            solution_points: limit,
            shift_cases: limit,
            map_candidates: limit,
        }
    }

    /// Defaults, overridden by `GRADERING_BUDGET` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => {
                let limit = raw.trim().parse::<u64>().map_err(|_| {
                    Error::malformed(BUDGET_ENV, format!("expected a positive integer, got `{raw}`"))
                })?;
                if limit == 0 {
                    return Err(Error::malformed(BUDGET_ENV, "budget must be positive"));
                }
                Ok(Budget::uniform(limit))
            }
            Err(_) => Ok(Budget::default()),
        }
    }
}

pub(crate) fn check(what: &'static str, needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded {
            what,
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_count(base: u32, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
