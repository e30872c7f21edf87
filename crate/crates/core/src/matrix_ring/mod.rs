//! Dense n x n matrices over GF(q) for small n and q: arithmetic, Jordan cells, centralizers,
//! generated subalgebras and similarity classes.

mod engine;
mod matrix;
mod structure;

pub use engine::{DenseRing, Gf2Ring, RingEngine};
pub use matrix::{Matrix, MatrixIndex, Packed, MAX_DIM, MAX_MATRIX_FIELD};
pub use structure::{
    centralizer, centralizer_dimension, enumerate_matrices, general_linear_group,
    in_generated_subalgebra, matrix_count, minimal_polynomial, similarity_class, subalgebra_of,
    SimilarityClass, Subalgebra,
};

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::fields::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix shapes differ")]
    ShapeMismatch,
    #[error("matrices live over different fields")]
    ContextMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed matrix: {0}")]
    Parse(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Field(#[from] FieldError),
}
