use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{FieldError, GaloisField, Gf};
use crate::scalar::Scalar;

/// A field context: a finite field with a fixed presentation, or the exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldCtx {
    Galois(GaloisField),
    Rational,
}

/// A value tagged with the kind of context it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Galois(Gf),
    Rational(BigRational),
}

/// Parses a field spec: `Q`, `p`, `p^m`, or `p^m:c0,c1,...,1`.
pub fn make_field(spec: &str) -> Result<FieldCtx, FieldError> {
    let spec = spec.trim();
    if spec == "Q" {
        return Ok(FieldCtx::Rational);
    }
    let (size, modulus) = match spec.split_once(':') {
        Some((size, modulus)) => (size, Some(modulus)),
        None => (spec, None),
    };
    let bad = |what: &str| FieldError::Parse(format!("{what} in field spec {spec:?}"));
    let (p, m) = match size.split_once('^') {
        Some((p, m)) => (
            p.trim().parse::<u64>().map_err(|_| bad("bad prime"))?,
            m.trim().parse::<u32>().map_err(|_| bad("bad exponent"))?,
        ),
        // a bare prime power such as "9" means GF(3^2) with the default modulus
        None => {
            let q = size.trim().parse::<u64>().map_err(|_| bad("bad prime"))?;
            super::poly::prime_power(q).unwrap_or((q, 1))
        }
    };
    let field = match modulus {
        None => GaloisField::new(p, m)?,
        Some(text) => {
            let coeffs = text
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| bad("bad modulus coefficient"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            GaloisField::with_modulus(p, m, &coeffs)?
        }
    };
    Ok(FieldCtx::Galois(field))
}

impl FromStr for FieldCtx {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        make_field(s)
    }
}

impl FieldCtx {
    pub fn galois(&self) -> Option<&GaloisField> {
        match self {
            FieldCtx::Galois(f) => Some(f),
            FieldCtx::Rational => None,
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Galois(f) => f.characteristic(),
            FieldCtx::Rational => 0,
        }
    }

    pub fn order(&self) -> Option<u64> {
        self.galois().map(GaloisField::order)
    }

    pub fn spec_string(&self) -> String {
        match self {
            FieldCtx::Galois(f) => f.spec_string(),
            FieldCtx::Rational => "Q".to_string(),
        }
    }

    pub fn from_integer(&self, n: i64) -> Element {
        match self {
            FieldCtx::Galois(f) => Element::Galois(f.from_integer(n)),
            FieldCtx::Rational => Element::Rational(BigRational::from_integer(n.into())),
        }
    }

    pub fn zero(&self) -> Element {
        self.from_integer(0)
    }

    pub fn one(&self) -> Element {
        self.from_integer(1)
    }

    fn check(&self, a: &Element) -> Result<(), FieldError> {
        match (self, a) {
            (FieldCtx::Galois(f), Element::Galois(x)) if f.same_field(x.field()) => Ok(()),
            (FieldCtx::Rational, Element::Rational(_)) => Ok(()),
            _ => Err(FieldError::ContextMismatch),
        }
    }

    fn lift2(
        &self,
        a: &Element,
        b: &Element,
        gf: impl Fn(&Gf, &Gf) -> Gf,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Element, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Element::Galois(x), Element::Galois(y)) => Element::Galois(gf(x, y)),
            (Element::Rational(x), Element::Rational(y)) => Element::Rational(q(x, y)),
            _ => unreachable!("checked above"),
        })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, FieldError> {
        self.lift2(a, b, |x, y| x + y, |x, y| x + y)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element, FieldError> {
        self.lift2(a, b, |x, y| x - y, |x, y| x - y)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, FieldError> {
        self.lift2(a, b, |x, y| x * y, |x, y| x * y)
    }

    pub fn neg(&self, a: &Element) -> Result<Element, FieldError> {
        self.check(a)?;
        Ok(match a {
            Element::Galois(x) => Element::Galois(-x),
            Element::Rational(x) => Element::Rational(-x),
        })
    }

    pub fn inv(&self, a: &Element) -> Result<Element, FieldError> {
        self.check(a)?;
        match a {
            Element::Galois(x) => x.inv().map(Element::Galois),
            Element::Rational(x) => x.checked_inv().map(Element::Rational),
        }
        .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, a: &Element, e: i64) -> Result<Element, FieldError> {
        self.check(a)?;
        match a {
            Element::Galois(x) => x.pow(e).map(Element::Galois),
            Element::Rational(x) => x.pow_i(e).map(Element::Rational),
        }
        .ok_or(FieldError::DivisionByZero)
    }

    pub fn is_square(&self, a: &Element) -> Result<Option<Element>, FieldError> {
        self.check(a)?;
        match (self, a) {
            (FieldCtx::Galois(f), Element::Galois(x)) => Ok(f.is_square(x)?.map(Element::Galois)),
            _ => Err(FieldError::Unsupported("square test over the rationals")),
        }
    }

    pub fn enumerate(&self) -> Result<Vec<Element>, FieldError> {
        match self {
            FieldCtx::Galois(f) => Ok(f.elements().map(Element::Galois).collect()),
            FieldCtx::Rational => Err(FieldError::Unsupported("enumeration of the rationals")),
        }
    }

    /// Parses an element: integer or `(c0 c1 ...)` for GF, `num/den` or integer for Q.
    pub fn parse(&self, text: &str) -> Result<Element, FieldError> {
        match self {
            FieldCtx::Galois(f) => f.parse(text).map(Element::Galois),
            FieldCtx::Rational => parse_rational(text).map(Element::Rational),
        }
    }

    pub fn render(&self, a: &Element) -> Result<String, FieldError> {
        self.check(a)?;
        Ok(a.to_string())
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let text = text.trim();
    let bad = || FieldError::Parse(format!("bad rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Always `num/den`, denominator positive, lowest terms.
pub fn render_rational(x: &BigRational) -> String {
    debug_assert!(x.denom().is_positive());
    format!("{}/{}", x.numer(), x.denom())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Galois(x) => write!(f, "{x}"),
            Element::Rational(x) => f.write_str(&render_rational(x)),
        }
    }
}
