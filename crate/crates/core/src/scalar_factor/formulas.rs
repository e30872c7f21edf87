//! Closed-form balanced factorizations, written once for every [`Scalar`].

use std::collections::HashSet;

use super::certificate::{Provenance, ScalarCertificate};
use super::FactorError;
use crate::fields::{FieldError, Gf};
use crate::scalar::Scalar;
use crate::Rational;

fn div<T: Scalar>(num: T, den: &T) -> Result<T, FactorError> {
    num.checked_div(den)
        .ok_or(FactorError::Field(FieldError::DivisionByZero))
}

fn sign_power<T: Scalar>(like: &T, n: usize) -> T {
    like.from_int_like(if n.is_multiple_of(2) { 1 } else { -1 })
}

fn require_nonpower<T: Scalar>(
    cert: ScalarCertificate<T>,
) -> Result<ScalarCertificate<T>, FactorError> {
    if cert.nonpower {
        Ok(cert)
    } else {
        Err(FactorError::Verification(
            super::Rejection::PowerDecomposition,
        ))
    }
}

fn odd_count(k: usize, min: usize) -> Result<usize, FactorError> {
    if k < min || k.is_multiple_of(2) {
        return Err(FactorError::InvalidFactorCount {
            k,
            reason: "expected an odd factor count of at least 5",
        });
    }
    Ok((k - min) / 2)
}

fn even_count(k: usize, min: usize) -> Result<usize, FactorError> {
    if k < min || k % 2 == 1 {
        return Err(FactorError::InvalidFactorCount {
            k,
            reason: "expected an even factor count above the formula's minimum",
        });
    }
    Ok((k - min) / 2)
}

/// The witness used when the four-factor identity has a vanishing denominator at the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftWitness<T> {
    pub y: T,
    /// `target * y^4`, never 1/4, -1/8 or 0.
    pub shifted_target: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourFactor<T> {
    pub certificate: ScalarCertificate<T>,
    pub shift: Option<ShiftWitness<T>>,
}

/// `x = 2(1-4x)^2 / (3(1+8x)) * -(1+8x)/6 * -(1+8x) / (2(1-4x)) * 18x / ((1-4x)(1+8x))`.
///
/// Needs 2 and 3 invertible and `x` outside {1/4, -1/8}.
fn four_factor_identity<T: Scalar>(x: &T) -> Result<Vec<T>, FactorError> {
    let c = |n| x.from_int_like(n);
    let minus4 = c(1) - c(4) * x.clone();
    let plus8 = c(1) + c(8) * x.clone();
    Ok(vec![
        div(
            c(2) * minus4.clone() * minus4.clone(),
            &(c(3) * plus8.clone()),
        )?,
        div(-plus8.clone(), &c(6))?,
        div(-plus8.clone(), &(c(2) * minus4.clone()))?,
        div(c(18) * x.clone(), &(minus4 * plus8))?,
    ])
}

fn exceptional_points<T: Scalar>(x: &T) -> Result<[T; 2], FactorError> {
    let quarter = div(x.one_like(), &x.from_int_like(4))?;
    let minus_eighth = div(x.from_int_like(-1), &x.from_int_like(8))?;
    Ok([quarter, minus_eighth])
}

/// Applies the identity to `x y^4` and divides every factor by `y`.
fn shifted_identity<T: Scalar>(x: &T, y: &T) -> Result<Vec<T>, FactorError> {
    let shifted = x.clone() * y.pow_i(4).ok_or(FactorError::ZeroTarget)?;
    four_factor_identity(&shifted)?
        .into_iter()
        .map(|f| div(f, y))
        .collect()
}

/// Balanced four-factor decomposition of any element, in characteristic other than 2 and 3
/// and outside GF(5).
pub fn four_factor<T: Scalar>(x: &T) -> Result<FourFactor<T>, FactorError> {
    let p = x.characteristic();
    if p == 2 || p == 3 {
        return Err(FactorError::Unsupported(format!(
            "four-factor identity needs characteristic other than 2 and 3, got {p}"
        )));
    }
    if x.field_order() == Some(5) {
        return Err(FactorError::Unsupported(
            "GF(5) is an exception for four factors".into(),
        ));
    }
    let bad = exceptional_points(x)?;
    if !bad.contains(x) {
        let factors = four_factor_identity(x)?;
        let certificate =
            ScalarCertificate::checked(x.clone(), factors, Provenance::FourFactorIdentity)?;
        return Ok(FourFactor {
            certificate,
            shift: None,
        });
    }
    for y in x.witness_candidates() {
        if y.is_zero() {
            continue;
        }
        let shifted = x.clone() * y.pow_i(4).expect("y is nonzero");
        if shifted.is_zero() || bad.contains(&shifted) {
            continue;
        }
        let factors = shifted_identity(x, &y)?;
        let certificate =
            ScalarCertificate::checked(x.clone(), factors, Provenance::FourFactorShifted)?;
        return Ok(FourFactor {
            certificate,
            shift: Some(ShiftWitness {
                y,
                shifted_target: shifted,
            }),
        });
    }
    Err(FactorError::NoAdmissibleWitness(
        "no y with x y^4 outside {1/4, -1/8, 0}",
    ))
}

/// `count` shifted four-factor decompositions of a nonzero rational `x` with pairwise
/// distinct factor tuples, using `y = 1, 2, 3, ...`.
pub fn rational_distinct_family(
    x: &Rational,
    count: usize,
) -> Result<Vec<ScalarCertificate<Rational>>, FactorError> {
    if Scalar::is_zero(x) {
        return Err(FactorError::ZeroTarget);
    }
    let bad = exceptional_points(x)?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    for y in x.witness_candidates() {
        if out.len() == count {
            break;
        }
        let shifted = x * y.pow_i(4).expect("y is nonzero");
        if bad.contains(&shifted) {
            continue;
        }
        let factors = shifted_identity(x, &y)?;
        if !seen.insert(factors.clone()) {
            continue;
        }
        out.push(ScalarCertificate::checked(
            x.clone(),
            factors,
            Provenance::FourFactorShifted,
        )?);
    }
    Ok(out)
}

/// `a = (-a') (a'/2) (a'/2) (2/a') (-2/a') 1^n (-1)^n` with `k = 5 + 2n` and `a' = (-1)^n a`.
pub fn odd_k_factor<T: Scalar>(a: &T, k: usize) -> Result<ScalarCertificate<T>, FactorError> {
    if a.characteristic() == 2 {
        return Err(FactorError::Unsupported(
            "odd-count formula needs characteristic other than 2".into(),
        ));
    }
    if a.is_zero() {
        return Err(FactorError::ZeroTarget);
    }
    let n = odd_count(k, 5)?;
    let c = |v| a.from_int_like(v);
    let a1 = a.clone() * sign_power(a, n);
    let half = div(a1.clone(), &c(2))?;
    let two_over = div(c(2), &a1)?;
    let mut factors = vec![-a1, half.clone(), half, two_over.clone(), -two_over];
    factors.extend(std::iter::repeat_n(c(1), n));
    factors.extend(std::iter::repeat_n(c(-1), n));
    require_nonpower(ScalarCertificate::checked(
        a.clone(),
        factors,
        Provenance::OddUniversal,
    )?)
}

/// The odd-count family with a free parameter: for `k = 2m + 5`, `x' = (-1)^m x`,
/// `Y = y^(2m+4)` and `Y' = y^(2m+6)`,
/// `x = (x'Y/2)(x'Y/2)(-x'Y)(2/(x'Y'))(-2/(x'Y'))(1/y)^m(-1/y)^m`.
pub fn parametrized_odd_factor<T: Scalar>(
    x: &T,
    y: &T,
    k: usize,
) -> Result<ScalarCertificate<T>, FactorError> {
    if x.characteristic() == 2 {
        return Err(FactorError::Unsupported(
            "parametrized formula needs characteristic other than 2".into(),
        ));
    }
    if x.is_zero() || y.is_zero() {
        return Err(FactorError::ZeroTarget);
    }
    let m = odd_count(k, 5)?;
    let c = |v| x.from_int_like(v);
    let x1 = x.clone() * sign_power(x, m);
    let big = y.pow_i(2 * m as i64 + 4).expect("y is nonzero");
    let bigger = y.pow_i(2 * m as i64 + 6).expect("y is nonzero");
    let head = div(x1.clone() * big.clone(), &c(2))?;
    let tail = div(c(2), &(x1.clone() * bigger))?;
    let inv_y = div(c(1), y)?;
    let mut factors = vec![head.clone(), head, -(x1 * big), tail.clone(), -tail];
    factors.extend(std::iter::repeat_n(inv_y.clone(), m));
    factors.extend(std::iter::repeat_n(-inv_y, m));
    require_nonpower(ScalarCertificate::checked(
        x.clone(),
        factors,
        Provenance::ParametrizedOdd,
    )?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case4Witness<T> {
    pub c: T,
    /// `(c^2 - a') / c`.
    pub b: T,
}

/// `a = (-c)(c-b)(b/2)(b/2)(2/b)(-2/b) 1^n (-1)^n` with `k = 6 + 2n`, `a' = (-1)^n a`,
/// `c` the first nonzero candidate with `c^2 != a'` and `b = (c^2 - a')/c`.
///
/// Over GF(3) with `a' = 1` no such `c` exists and this returns
/// [`FactorError::NoAdmissibleWitness`]; [`balanced_factor`](super::balanced_factor) then
/// falls back to the exhaustive oracle.
pub fn even_k_factor<T: Scalar>(
    a: &T,
    k: usize,
) -> Result<(ScalarCertificate<T>, Case4Witness<T>), FactorError> {
    if a.characteristic() == 2 {
        return Err(FactorError::Unsupported(
            "even-count formula needs characteristic other than 2".into(),
        ));
    }
    if a.is_zero() {
        return Err(FactorError::ZeroTarget);
    }
    let n = even_count(k, 6)?;
    let a1 = a.clone() * sign_power(a, n);
    let c = a
        .witness_candidates()
        .find(|c| !c.is_zero() && c.clone() * c.clone() != a1)
        .ok_or(FactorError::NoAdmissibleWitness(
            "every nonzero c has c^2 = a'",
        ))?;
    let k2 = |v| a.from_int_like(v);
    let b = div(c.clone() * c.clone() - a1, &c)?;
    let half = div(b.clone(), &k2(2))?;
    let two_over = div(k2(2), &b)?;
    let mut factors = vec![
        -c.clone(),
        c.clone() - b.clone(),
        half.clone(),
        half,
        two_over.clone(),
        -two_over,
    ];
    factors.extend(std::iter::repeat_n(k2(1), n));
    factors.extend(std::iter::repeat_n(k2(-1), n));
    let cert = require_nonpower(ScalarCertificate::checked(
        a.clone(),
        factors,
        Provenance::EvenUniversal,
    )?)?;
    Ok((cert, Case4Witness { c, b }))
}

/// Even factor counts in characteristic 2, `q >= 4`:
/// `a = b * b * 1^(k-2)` for `a` outside {0, 1} (`b` the square root),
/// `1 = c * c * (1/c) * (1/c) * 1^(k-4)` for the first `c` outside {0, 1},
/// and the zero rule for `a = 0`.
pub fn char2_even_factor(a: &Gf, k: usize) -> Result<ScalarCertificate<Gf>, FactorError> {
    let field = a.field();
    if field.characteristic() != 2 {
        return Err(FactorError::Unsupported(
            "square-root construction needs characteristic 2".into(),
        ));
    }
    if field.order() == 2 {
        return Err(FactorError::Unsupported(
            "over GF(2) every factorization of 1 is a power".into(),
        ));
    }
    even_count(k, 4)?;
    if a.is_zero() {
        return zero_rule(a, k);
    }
    let one = field.one();
    let mut factors = if !a.is_one() {
        let b = field.frobenius_root(a)?;
        vec![b.clone(), b]
    } else {
        let c = field
            .elements()
            .find(|c| !c.is_zero() && !c.is_one())
            .expect("q >= 4");
        let inv = c.inv().expect("c is nonzero");
        vec![c.clone(), c, inv.clone(), inv]
    };
    factors.resize(k, one);
    require_nonpower(ScalarCertificate::checked(
        a.clone(),
        factors,
        Provenance::CharTwoSquares,
    )?)
}

/// `0 = (-1) * 1 * 0^(k-2)`; `like` only supplies the field.
pub fn zero_rule<T: Scalar>(like: &T, k: usize) -> Result<ScalarCertificate<T>, FactorError> {
    if k < 3 {
        return Err(FactorError::InvalidFactorCount {
            k,
            reason: "the zero rule needs at least three factors",
        });
    }
    let mut factors = vec![like.from_int_like(-1), like.one_like()];
    factors.resize(k, like.zero_like());
    require_nonpower(ScalarCertificate::checked(
        like.zero_like(),
        factors,
        Provenance::ZeroRule,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{parse_rational, GaloisField};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn render<T: Scalar>(v: &[T]) -> Vec<String> {
        v.iter().map(Scalar::render).collect()
    }

    #[test]
    fn four_factor_rational_one() {
        let r = four_factor(&q("1")).unwrap();
        assert!(r.shift.is_none());
        assert_eq!(
            render(&r.certificate.factors),
            ["2/3", "-3/2", "3/2", "-2/3"]
        );
    }

    #[test]
    fn four_factor_gf7() {
        let f = GaloisField::prime(7).unwrap();
        let r = four_factor(&f.one()).unwrap();
        assert_eq!(render(&r.certificate.factors), ["3", "2", "5", "4"]);
        assert_eq!(r.certificate.provenance, Provenance::FourFactorIdentity);

        // 2 = 1/4 in GF(7)
        let r = four_factor(&f.from_integer(2)).unwrap();
        let shift = r.shift.unwrap();
        assert_eq!(shift.y, f.from_integer(2));
        assert_eq!(shift.shifted_target, f.from_integer(4));
        assert_eq!(r.certificate.provenance, Provenance::FourFactorShifted);
        assert!(r.certificate.is_valid());
    }

    #[test]
    fn four_factor_rational_exceptional_points() {
        for x in ["1/4", "-1/8"] {
            let r = four_factor(&q(x)).unwrap();
            assert_eq!(r.shift.as_ref().unwrap().y, q("2"));
            assert!(r.certificate.is_valid());
        }
    }

    #[test]
    fn four_factor_refusals() {
        for (p, m) in [(5, 1), (2, 2), (3, 2), (3, 1)] {
            let f = GaloisField::new(p, m).unwrap();
            assert!(matches!(
                four_factor(&f.one()),
                Err(FactorError::Unsupported(_))
            ));
        }
    }

    #[test]
    fn distinct_family() {
        let fam = rational_distinct_family(&q("1"), 3).unwrap();
        assert_eq!(fam.len(), 3);
        assert_ne!(fam[0].factors[1], fam[1].factors[1]);
        assert_ne!(fam[1].factors[1], fam[2].factors[1]);
        assert_eq!(
            rational_distinct_family(&q("0"), 3),
            Err(FactorError::ZeroTarget)
        );
    }

    #[test]
    fn odd_examples() {
        let f = GaloisField::prime(7).unwrap();
        let c = odd_k_factor(&f.one(), 5).unwrap();
        assert_eq!(render(&c.factors), ["6", "4", "4", "2", "5"]);
        let f3 = GaloisField::prime(3).unwrap();
        assert!(odd_k_factor(&f3.from_integer(2), 5).unwrap().nonpower);
        let f4 = GaloisField::new(2, 2).unwrap();
        assert!(matches!(
            odd_k_factor(&f4.one(), 5),
            Err(FactorError::Unsupported(_))
        ));
        assert!(matches!(
            odd_k_factor(&f.one(), 6),
            Err(FactorError::InvalidFactorCount { .. })
        ));
        assert!(matches!(
            odd_k_factor(&f.one(), 3),
            Err(FactorError::InvalidFactorCount { .. })
        ));
        assert_eq!(odd_k_factor(&f.zero(), 5), Err(FactorError::ZeroTarget));
    }

    #[test]
    fn parametrized_examples() {
        let c = parametrized_odd_factor(&q("1"), &q("1"), 5).unwrap();
        assert_eq!(render(&c.factors), ["1/2", "1/2", "-1/1", "2/1", "-2/1"]);
        let c = parametrized_odd_factor(&q("1"), &q("2"), 7).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.factors[5], q("1/2"));
        let f = GaloisField::prime(7).unwrap();
        let c = parametrized_odd_factor(&f.from_integer(3), &f.from_integer(2), 9).unwrap();
        assert!(c.is_valid() && c.nonpower);
        let big = parametrized_odd_factor(&q("3/5"), &q("-7/2"), 2017).unwrap();
        assert_eq!(big.factors.len(), 2017);
    }

    #[test]
    fn even_examples() {
        let f = GaloisField::prime(7).unwrap();
        let (c, w) = even_k_factor(&f.from_integer(3), 6).unwrap();
        assert_eq!(w.c, f.one());
        assert_eq!(w.b, f.from_integer(5));
        assert_eq!(render(&c.factors), ["6", "3", "6", "6", "6", "1"]);
        let f5 = GaloisField::prime(5).unwrap();
        assert!(even_k_factor(&f5.from_integer(2), 6).unwrap().0.is_valid());
        let f3 = GaloisField::prime(3).unwrap();
        assert!(matches!(
            even_k_factor(&f3.one(), 6),
            Err(FactorError::NoAdmissibleWitness(_))
        ));
        // k = 8 flips the sign: a' = -1 = 2 admits c = 1
        assert!(even_k_factor(&f3.one(), 8).is_ok());
    }

    #[test]
    fn char2_examples() {
        let f = GaloisField::new(2, 2).unwrap();
        let alpha = f.element(2).unwrap();
        let c = char2_even_factor(&alpha, 4).unwrap();
        assert_eq!(render(&c.factors), ["(1 1)", "(1 1)", "(1 0)", "(1 0)"]);
        let c = char2_even_factor(&f.one(), 4).unwrap();
        assert_eq!(render(&c.factors), ["(0 1)", "(0 1)", "(1 1)", "(1 1)"]);
        let c = char2_even_factor(&f.one(), 6).unwrap();
        assert!(c.is_valid() && c.nonpower);
        let f2 = GaloisField::prime(2).unwrap();
        assert!(matches!(
            char2_even_factor(&f2.one(), 4),
            Err(FactorError::Unsupported(_))
        ));
    }

    #[test]
    fn zero_rule_examples() {
        let f5 = GaloisField::prime(5).unwrap();
        assert_eq!(
            render(&zero_rule(&f5.one(), 3).unwrap().factors),
            ["4", "1", "0"]
        );
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(
            render(&zero_rule(&f7.zero(), 5).unwrap().factors),
            ["6", "1", "0", "0", "0"]
        );
        let f2 = GaloisField::prime(2).unwrap();
        assert_eq!(
            render(&zero_rule(&f2.zero(), 4).unwrap().factors),
            ["1", "1", "0", "0"]
        );
        assert!(zero_rule(&f2.zero(), 2).is_err());
        assert!(zero_rule(&q("5"), 3).unwrap().is_valid());
    }
}
