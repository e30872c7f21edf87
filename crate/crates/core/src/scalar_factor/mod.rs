//! Balanced factorizations of single field elements: closed-form constructions, the
//! decision predicates, and an exhaustive oracle to check both against.

mod certificate;
mod char3;
mod decide;
mod dispatch;
mod formulas;
mod oracle;

pub use certificate::{is_power, Provenance, Rejection, ScalarCertificate};
pub use char3::{char3_three_factor, find_paired_square, Case6Witness, PairedSquare};
pub use decide::{decide_balanced, decide_nonpower};
pub use dispatch::{balanced_factor, rational_factor};
pub use formulas::{
    char2_even_factor, even_k_factor, four_factor, odd_k_factor, parametrized_odd_factor,
    rational_distinct_family, zero_rule, Case4Witness, FourFactor, ShiftWitness,
};
pub use oracle::{oracle_search, oracle_sweep, OracleSweep};

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::fields::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("target must be nonzero")]
    ZeroTarget,
    #[error("invalid factor count {k}: {reason}")]
    InvalidFactorCount { k: usize, reason: &'static str },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no admissible witness: {0}")]
    NoAdmissibleWitness(&'static str),
    #[error("certificate failed verification: {0}")]
    Verification(#[from] Rejection),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("no balanced factorization found ({})", if *.proven { "exhaustive search" } else { "search budget exhausted" })]
    NotFound { proven: bool },
    #[error(transparent)]
    Field(#[from] FieldError),
}
