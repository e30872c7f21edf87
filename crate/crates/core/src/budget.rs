//! Hard caps on enumeration sizes and search iterations.

use thiserror::Error;

/// Environment variable overriding the default iteration cap.
pub const BUDGET_ENV: &str = "BALFACT_BUDGET";

pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;
pub const DEFAULT_ITERATION_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} needs {needed} steps, budget is {cap}")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub needed: u128,
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of matrices (or tuples) an enumeration may materialize.
    pub enumeration_cap: u64,
    /// Maximum number of inner-loop steps of a search.
    pub iteration_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            iteration_cap: DEFAULT_ITERATION_CAP,
        }
    }
}

impl Budget {
    /// Defaults, with the iteration cap taken from `BALFACT_BUDGET` when set and parseable.
    pub fn from_env() -> Self {
        let mut budget = Budget::default();
        if let Some(cap) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            budget.iteration_cap = cap;
        }
        budget
    }

    pub fn with_iterations(iteration_cap: u64) -> Self {
        Budget {
            iteration_cap,
            ..Budget::default()
        }
    }

    pub fn check_enumeration(
        &self,
        what: &'static str,
        needed: u128,
    ) -> Result<(), BudgetExceeded> {
        if needed > self.enumeration_cap as u128 {
            Err(BudgetExceeded {
                what,
                needed,
                cap: self.enumeration_cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_iterations(&self, what: &'static str, needed: u128) -> Result<(), BudgetExceeded> {
        if needed > self.iteration_cap as u128 {
            Err(BudgetExceeded {
                what,
                needed,
                cap: self.iteration_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` without overflow; saturates at `u128::MAX`.
pub fn space_size(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Counts steps of a search whose size is not known up front.
#[derive(Debug)]
pub struct StepCounter {
    what: &'static str,
    used: u64,
    cap: u64,
}

impl StepCounter {
    pub fn new(what: &'static str, budget: &Budget) -> Self {
        StepCounter {
            what,
            used: 0,
            cap: budget.iteration_cap,
        }
    }

    #[inline]
    pub fn step(&mut self) -> Result<(), BudgetExceeded> {
        self.used += 1;
        if self.used > self.cap {
            Err(BudgetExceeded {
                what: self.what,
                needed: self.used as u128,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
