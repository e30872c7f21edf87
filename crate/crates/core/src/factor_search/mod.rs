//! Balanced factorizations of matrices: the commuting decision predicate, a complete search
//! inside the subalgebra generated by the target, exhaustive achievable-set engines for the
//! general (non-commuting) question, and reproducers for the small-field experiments.

mod achievable;
mod certificate;
mod commuting;
mod experiments;
mod general;
mod tables;

pub use achievable::{achievable_set, naive_achievable_set, AchievableSet};
pub use certificate::{MatrixCertificate, SearchMethod};
pub use commuting::{
    centralizer_search, commuting_factor, decide_matrix, jordan_not_square, jordan_reduction,
    subalgebra_search,
};
pub use experiments::{reproduce_fact, FactCheck, FactReport, FACT_IDS};
pub use general::general_factor;
pub use tables::{
    parse_expected, prime_powers_up_to, render_expected, sweep_table, table_cells, Discrepancy,
    SweepCell, TableKind, TableSweep, EXPECTED_DISCREPANCIES,
};

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::matrix_ring::MatrixError;
use crate::scalar_factor::{FactorError, Rejection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no commuting balanced {k}-factorization exists for every matrix over GF({q})")]
    DecisionNo { q: u64, k: usize },
    /// A complete search came up empty although the decision predicate is true.
    #[error("search exhausted for {target} over GF({q}) with k = {k}, contradicting the decision predicate")]
    SearchExhausted { q: u64, k: usize, target: String },
    #[error("no balanced factorization found ({})", if *.proven { "exhaustive search" } else { "search incomplete" })]
    NotFound { proven: bool },
    #[error("target is not a Jordan cell")]
    NotJordanCell,
    #[error("factor {0} is outside the centralizer of the target")]
    OutsideCentralizer(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("certificate failed verification: {0}")]
    Verification(#[from] Rejection),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Matrix(MatrixError),
    #[error(transparent)]
    Factor(FactorError),
}

impl From<MatrixError> for SearchError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Budget(b) => SearchError::Budget(b),
            other => SearchError::Matrix(other),
        }
    }
}

impl From<FactorError> for SearchError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::Budget(b) => SearchError::Budget(b),
            FactorError::Verification(r) => SearchError::Verification(r),
            other => SearchError::Factor(other),
        }
    }
}
