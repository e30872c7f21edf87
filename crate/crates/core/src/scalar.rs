//! The scalar abstraction the constructive formulas are written against.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::fields::{render_rational, Gf};

/// Exact field elements. Constants are produced relative to an existing value (`one_like`,
/// `from_int_like`) because a finite-field element only makes sense inside its field.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    #[allow(clippy::wrong_self_convention)]
    fn from_int_like(&self, n: i64) -> Self;

    fn is_zero(&self) -> bool;

    /// 0 for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    /// `None` for infinite fields.
    fn field_order(&self) -> Option<u64>;

    fn checked_inv(&self) -> Option<Self>;

    /// Deterministic stream of candidate witnesses: the field enumeration for finite fields,
    /// the positive integers 1, 2, 3, ... for the rationals.
    fn witness_candidates(&self) -> Box<dyn Iterator<Item = Self> + Send>;

    fn render(&self) -> String {
        self.to_string()
    }

    /// Whether two values can be combined. Always true for context-free scalars.
    fn same_context(&self, _other: &Self) -> bool {
        true
    }

    fn zero_like(&self) -> Self {
        self.from_int_like(0)
    }

    fn one_like(&self) -> Self {
        self.from_int_like(1)
    }

    fn checked_div(&self, den: &Self) -> Option<Self> {
        den.checked_inv().map(|inv| self.clone() * inv)
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        let mut base = if e < 0 {
            self.checked_inv()?
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        Some(acc)
    }
}

impl Scalar for Gf {
    fn from_int_like(&self, n: i64) -> Self {
        self.field().from_integer(n)
    }

    fn is_zero(&self) -> bool {
        Gf::is_zero(self)
    }

    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    fn field_order(&self) -> Option<u64> {
        Some(self.field().order())
    }

    fn checked_inv(&self) -> Option<Self> {
        self.inv()
    }

    fn witness_candidates(&self) -> Box<dyn Iterator<Item = Self> + Send> {
        let field = self.field().clone();
        Box::new((0..field.order() as u32).map(move |i| field.element(i).expect("in range")))
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        self.pow(e)
    }

    fn same_context(&self, other: &Self) -> bool {
        self.field().same_field(other.field())
    }
}

impl Scalar for BigRational {
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn field_order(&self) -> Option<u64> {
        None
    }

    fn checked_inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn witness_candidates(&self) -> Box<dyn Iterator<Item = Self> + Send> {
        Box::new((1i64..).map(|n| BigRational::from_integer(BigInt::from(n))))
    }

    fn render(&self) -> String {
        render_rational(self)
    }

    fn one_like(&self) -> Self {
        One::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::GaloisField;

    #[test]
    fn rational_powers() {
        let x = BigRational::new(2.into(), 3.into());
        assert_eq!(x.pow_i(-1).unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(x.pow_i(3).unwrap(), BigRational::new(8.into(), 27.into()));
        assert_eq!(x.zero_like().pow_i(-2), None);
        assert_eq!(x.render(), "2/3");
    }

    #[test]
    fn default_pow_agrees_with_table_pow() {
        let f = GaloisField::new(3, 3).unwrap();
        for a in f.elements().skip(1) {
            for e in -5..30 {
                let generic = <Gf as Scalar>::pow_i(&a, e).unwrap();
                let mut by_hand = a.one_like();
                let step = if e < 0 { a.inv().unwrap() } else { a.clone() };
                for _ in 0..e.unsigned_abs() {
                    by_hand = by_hand * step.clone();
                }
                assert_eq!(generic, by_hand);
            }
        }
    }

    #[test]
    fn rational_candidates_are_positive_integers() {
        let x = BigRational::one();
        let c: Vec<String> = x.witness_candidates().take(3).map(|c| c.render()).collect();
        assert_eq!(c, ["1/1", "2/1", "3/1"]);
    }
}
