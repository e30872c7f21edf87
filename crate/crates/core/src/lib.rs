//! Balanced factorizations `a = a1 * ... * ak` with `a1 + ... + ak = 0` over finite fields,
//! the exact rationals and matrix rings over finite fields.
//!
//! Constructive formulas live in [`scalar_factor`]; matrix-level searches and the
//! achievable-set engines live in [`factor_search`]. Every construction returns a
//! certificate that has already been re-verified.

pub mod budget;
pub mod factor_search;
pub mod fields;
pub mod matrix_ring;
pub mod scalar;
pub mod scalar_factor;

pub use budget::{Budget, BudgetExceeded};
pub use fields::{make_field, Element, FieldCtx, FieldError, GaloisField, Gf};
pub use matrix_ring::{Matrix, MatrixError, MatrixIndex};
pub use scalar::Scalar;
pub use scalar_factor::{FactorError, ScalarCertificate};

/// Exact rationals.
pub type Rational = num_rational::BigRational;

/// Certificates over a finite field.
pub type GfCertificate = ScalarCertificate<Gf>;

/// Certificates over the rationals.
pub type RationalCertificate = ScalarCertificate<Rational>;
