//! Exact arithmetic in GF(p^m) and in the rationals.

mod ctx;
mod galois;
pub mod poly;

pub use ctx::{make_field, parse_rational, render_rational, Element, FieldCtx};
pub use galois::{GaloisField, Gf, MAX_FIELD_ORDER};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible")]
    Reducible,
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("field {p}^{m} is larger than supported")]
    TooLarge { p: u64, m: u32 },
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
