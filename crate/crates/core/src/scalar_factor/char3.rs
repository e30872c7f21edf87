//! Three-factor non-power decompositions in GF(3^n), n >= 2.
//!
//! For `a = b^3 != 0` take a nonzero square `u` with `u + 1 = pi^2` also a nonzero square,
//! set `y = (b + b pi)/2` and solve `y x^2 + y^2 x + a = 0` for `x`; then `z = -x - y`.
//! The discriminant `y^4 - 4ay = y (y - b)^3 = b^2 u (b pi - b)^2` is a square, so a root exists.

use super::certificate::{Provenance, ScalarCertificate};
use super::FactorError;
use crate::fields::{GaloisField, Gf};

/// A nonzero square `u` such that `u + 1 = pi^2` is a nonzero square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedSquare {
    pub u: Gf,
    pub pi: Gf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case6Witness {
    pub u: Gf,
    pub pi: Gf,
    /// Cube root of the target.
    pub b: Gf,
    pub y: Gf,
    pub discriminant: Gf,
    /// The chosen solution `x` of `y x^2 + y^2 x + a = 0`.
    pub root: Gf,
}

fn require_char3(field: &GaloisField) -> Result<(), FactorError> {
    if field.characteristic() != 3 {
        return Err(FactorError::Unsupported(format!(
            "needs characteristic 3, got {}",
            field.characteristic()
        )));
    }
    if field.order() == 3 {
        return Err(FactorError::Unsupported(
            "GF(3) has no nonzero square u with u + 1 a nonzero square".into(),
        ));
    }
    Ok(())
}

/// First `u` in enumeration order with `u` and `u + 1` nonzero squares; `pi` is the canonical
/// root of `u + 1`.
pub fn find_paired_square(field: &GaloisField) -> Result<PairedSquare, FactorError> {
    require_char3(field)?;
    let one = field.one();
    for u in field.elements().filter(|u| !u.is_zero()) {
        let next = &u + &one;
        if next.is_zero() || field.is_square(&u)?.is_none() {
            continue;
        }
        if let Some(pi) = field.is_square(&next)? {
            return Ok(PairedSquare { u, pi });
        }
    }
    Err(FactorError::NoAdmissibleWitness(
        "no nonzero square u with u + 1 a nonzero square",
    ))
}

pub fn char3_three_factor(a: &Gf) -> Result<(ScalarCertificate<Gf>, Case6Witness), FactorError> {
    let field = a.field();
    require_char3(field)?;
    if a.is_zero() {
        return Err(FactorError::ZeroTarget);
    }
    let c = |n| field.from_integer(n);
    let b = field.frobenius_root(a)?;
    debug_assert_eq!(b.pow(3).as_ref(), Some(a));

    let PairedSquare { u, pi } = find_paired_square(field)?;
    let y = (&b + &b * &pi) / c(2);
    if y == b || y.is_zero() {
        return Err(FactorError::NoAdmissibleWitness("y coincides with b"));
    }

    let discriminant = y.pow(4).expect("nonzero") - c(4) * a * &y;
    let via_cube = &y * (&y - &b).pow(3).expect("power");
    let bpi_minus_b = &b * &pi - &b;
    let via_squares = &b * &b * &u * &bpi_minus_b * &bpi_minus_b;
    if discriminant != via_cube || discriminant != via_squares {
        return Err(FactorError::NoAdmissibleWitness(
            "discriminant does not factor as expected",
        ));
    }
    let sqrt = field
        .is_square(&discriminant)?
        .ok_or(FactorError::NoAdmissibleWitness(
            "discriminant is not a square",
        ))?;

    // x = (-y^2 ± sqrt(D)) / (2y); keep the root that comes first in enumeration order
    let denom = c(2) * &y;
    let y2 = &y * &y;
    let r1 = (-&y2 + &sqrt) / &denom;
    let r2 = (-&y2 - &sqrt) / &denom;
    let x = if r1 <= r2 { r1 } else { r2 };
    debug_assert!((&y * &x * &x + &y2 * &x + a).is_zero());

    let z = -&x - &y;
    let cert = ScalarCertificate::checked(
        a.clone(),
        vec![x.clone(), y.clone(), z],
        Provenance::CharThreeQuadratic,
    )?;
    if !cert.nonpower {
        return Err(FactorError::Verification(
            super::Rejection::PowerDecomposition,
        ));
    }
    Ok((
        cert,
        Case6Witness {
            u,
            pi,
            b,
            y,
            discriminant,
            root: x,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_paired_square_is_one() {
        let f = GaloisField::with_modulus(3, 2, &[1, 0, 1]).unwrap();
        let ps = find_paired_square(&f).unwrap();
        assert_eq!(ps.u, f.one());
        assert_eq!(&ps.pi * &ps.pi, f.from_integer(2));
    }

    #[test]
    fn gf27_skips_one() {
        let f = GaloisField::new(3, 3).unwrap();
        assert!(f.is_square(&f.from_integer(2)).unwrap().is_none());
        let ps = find_paired_square(&f).unwrap();
        assert_ne!(ps.u, f.one());
        assert!(f.is_square(&ps.u).unwrap().is_some());
    }

    #[test]
    fn refusals() {
        let f3 = GaloisField::prime(3).unwrap();
        assert!(find_paired_square(&f3).is_err());
        assert!(find_paired_square(&GaloisField::prime(5).unwrap()).is_err());
        let f9 = GaloisField::new(3, 2).unwrap();
        assert_eq!(
            char3_three_factor(&f9.zero()).unwrap_err(),
            FactorError::ZeroTarget
        );
    }

    #[test]
    fn witness_satisfies_the_quadratic() {
        let f = GaloisField::new(3, 2).unwrap();
        for a in f.elements().skip(1) {
            let (cert, w) = char3_three_factor(&a).unwrap();
            assert!(cert.nonpower && cert.is_valid());
            let x = &w.root;
            assert!((&w.y * x * x + &w.y * &w.y * x + &a).is_zero());
            assert_ne!(w.y.pow(3).unwrap(), a);
        }
    }
}
