use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly;
use super::FieldError;

/// Largest field order this crate will build tables for.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// The finite field GF(p^m) presented as GF(p)[x] / (modulus).
///
/// Elements are addressed by their index `c0 + c1 p + ... + c_{m-1} p^{m-1}`, which is also the
/// enumeration order: 0 first, 1 second, then the rest with higher coefficients most significant.
#[derive(Clone)]
pub struct GaloisField(Arc<Tables>);

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for a primitive g, doubled so a log sum never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
    place: Vec<u32>,
}

impl GaloisField {
    /// GF(p^m) with the default modulus (first monic irreducible in enumeration order).
    pub fn new(p: u64, m: u32) -> Result<Self, FieldError> {
        Self::check_size(p, m)?;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            poly::smallest_irreducible(m, p)
        };
        Self::build(p, m, &modulus)
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// GF(p^m) with an explicit modulus `c0, c1, ..., c_{m-1}, 1`.
    pub fn with_modulus(p: u64, m: u32, modulus: &[u64]) -> Result<Self, FieldError> {
        Self::check_size(p, m)?;
        if modulus.len() != m as usize + 1 {
            return Err(FieldError::DegreeMismatch {
                expected: m,
                found: modulus.len().saturating_sub(1) as u32,
            });
        }
        if modulus.last() != Some(&1) {
            return Err(FieldError::NotMonic);
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(FieldError::Parse(format!(
                "modulus coefficient {c} is not reduced mod {p}"
            )));
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(FieldError::Reducible);
        }
        Self::build(p, m, modulus)
    }

    fn check_size(p: u64, m: u32) -> Result<(), FieldError> {
        if !poly::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
            _ => Err(FieldError::TooLarge { p, m }),
        }
    }

    fn build(p: u64, m: u32, modulus: &[u64]) -> Result<Self, FieldError> {
        let p32 = p as u32;
        let q = p.pow(m) as u32;
        let modulus: Vec<u32> = if m == 1 {
            vec![0, 1]
        } else {
            modulus.iter().map(|&c| c as u32).collect()
        };
        let place: Vec<u32> = (0..m).map(|i| p32.pow(i)).collect();
        let digits =
            |a: u32| -> Vec<u32> { (0..m).map(|i| (a / place[i as usize]) % p32).collect() };
        let undigits = |d: &[u32]| -> u32 { d.iter().zip(&place).map(|(c, w)| c * w).sum() };

        // schoolbook product reduced by the modulus; only used while building the log tables
        let slow_mul = |a: u32, b: u32| -> u32 {
            if m == 1 {
                return ((a as u64 * b as u64) % p) as u32;
            }
            let (da, db) = (digits(a), digits(b));
            let mut acc = vec![0u64; 2 * m as usize - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + (*x as u64) * (*y as u64)) % p;
                }
            }
            for top in (m as usize..acc.len()).rev() {
                let c = acc[top];
                if c == 0 {
                    continue;
                }
                for (i, mc) in modulus.iter().enumerate() {
                    let slot = &mut acc[top - m as usize + i];
                    *slot = (*slot + p - c * (*mc as u64) % p) % p;
                }
            }
            let low: Vec<u32> = acc[..m as usize].iter().map(|&c| c as u32).collect();
            undigits(&low)
        };

        let order = q - 1;
        let mut exp = Vec::new();
        for g in 1..q {
            exp.clear();
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = slow_mul(x, g);
            }
            if primitive && x == 1 {
                break;
            }
            exp.clear();
        }
        if exp.len() != order as usize {
            return Err(FieldError::Reducible);
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a).iter().map(|&c| (p32 - c) % p32).collect();
                undigits(&d)
            })
            .collect();

        let mut tables = Tables {
            p: p32,
            m,
            q,
            modulus,
            exp: doubled,
            log,
            neg,
            add: None,
            place,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut add = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    add.push(tables.add_digitwise(a, b) as u16);
                }
            }
            tables.add = Some(add);
        }
        Ok(GaloisField(Arc::new(tables)))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    /// Modulus coefficients, constant term first, leading 1 included.
    pub fn modulus(&self) -> Vec<u64> {
        self.0.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    pub fn same_field(&self, other: &GaloisField) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    // ---- index-level arithmetic, used directly by the search kernels ----

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        match &self.0.add {
            Some(t) => t[(a * self.0.q + b) as usize] as u32,
            None => self.0.add_digitwise(a, b),
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv_idx(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &self.0;
        let order = t.q - 1;
        Some(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    pub fn pow_idx(&self, a: u32, e: i64) -> Option<u32> {
        if a == 0 {
            return match e.cmp(&0) {
                Ordering::Less => None,
                Ordering::Equal => Some(1),
                Ordering::Greater => Some(0),
            };
        }
        let order = (self.0.q - 1) as i64;
        let l = (self.0.log[a as usize] as i64 * e.rem_euclid(order)) % order;
        Some(self.0.exp[l as usize])
    }

    pub fn from_int_idx(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let t = &self.0;
        (0..t.m).map(|i| (a / t.place[i as usize]) % t.p).collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<u32, FieldError> {
        let t = &self.0;
        if digits.len() != t.m as usize {
            return Err(FieldError::Parse(format!(
                "expected {} coefficients, found {}",
                t.m,
                digits.len()
            )));
        }
        if let Some(c) = digits.iter().find(|&&c| c >= t.p) {
            return Err(FieldError::Parse(format!(
                "coefficient {c} is not reduced mod {}",
                t.p
            )));
        }
        Ok(digits.iter().zip(&t.place).map(|(c, w)| c * w).sum())
    }

    // ---- element-level API ----

    pub fn element(&self, index: u32) -> Result<Gf, FieldError> {
        if index >= self.0.q {
            return Err(FieldError::Parse(format!(
                "index {index} out of range for a field of order {}",
                self.0.q
            )));
        }
        Ok(Gf::raw(self.clone(), index))
    }

    pub fn zero(&self) -> Gf {
        Gf::raw(self.clone(), 0)
    }

    pub fn one(&self) -> Gf {
        Gf::raw(self.clone(), 1)
    }

    /// Image of an integer under the ring map Z -> GF(q).
    pub fn from_integer(&self, n: i64) -> Gf {
        Gf::raw(self.clone(), self.from_int_idx(n))
    }

    /// All q elements, each once, in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.0.q).map(move |i| Gf::raw(self.clone(), i))
    }

    fn owns(&self, a: &Gf) -> Result<(), FieldError> {
        if self.same_field(&a.field) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn add(&self, a: &Gf, b: &Gf) -> Result<Gf, FieldError> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(Gf::raw(self.clone(), self.add_idx(a.value, b.value)))
    }

    pub fn neg(&self, a: &Gf) -> Result<Gf, FieldError> {
        self.owns(a)?;
        Ok(Gf::raw(self.clone(), self.neg_idx(a.value)))
    }

    pub fn mul(&self, a: &Gf, b: &Gf) -> Result<Gf, FieldError> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(Gf::raw(self.clone(), self.mul_idx(a.value, b.value)))
    }

    pub fn inv(&self, a: &Gf) -> Result<Gf, FieldError> {
        self.owns(a)?;
        self.inv_idx(a.value)
            .map(|v| Gf::raw(self.clone(), v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, a: &Gf, e: i64) -> Result<Gf, FieldError> {
        self.owns(a)?;
        self.pow_idx(a.value, e)
            .map(|v| Gf::raw(self.clone(), v))
            .ok_or(FieldError::DivisionByZero)
    }

    /// Square test by exhaustive scan. The returned root is the first square root in
    /// enumeration order, i.e. the smaller of the pair ±s.
    pub fn is_square(&self, a: &Gf) -> Result<Option<Gf>, FieldError> {
        self.owns(a)?;
        Ok((0..self.0.q)
            .find(|&s| self.mul_idx(s, s) == a.value)
            .map(|s| Gf::raw(self.clone(), s)))
    }

    /// Inverse of the Frobenius map x -> x^p, i.e. the unique p-th root.
    pub fn frobenius_root(&self, a: &Gf) -> Result<Gf, FieldError> {
        self.owns(a)?;
        let e = (self.0.p as i64).pow(self.0.m - 1);
        Ok(Gf::raw(self.clone(), self.pow_idx(a.value, e).unwrap_or(0)))
    }

    /// Renders an element index: a plain integer for prime fields, `(c0 c1 ...)` otherwise.
    pub fn render_idx(&self, a: u32) -> String {
        if self.0.m == 1 {
            a.to_string()
        } else {
            let parts: Vec<String> = self.digits(a).iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(" "))
        }
    }

    /// Parses an integer (reduced mod p) or a coefficient tuple `(c0 c1 ...)`.
    pub fn parse_idx(&self, text: &str) -> Result<u32, FieldError> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let digits = inner
                .split_whitespace()
                .map(|c| {
                    c.parse::<u32>()
                        .map_err(|_| FieldError::Parse(format!("bad coefficient {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            self.from_digits(&digits)
        } else {
            let n: i64 = text
                .parse()
                .map_err(|_| FieldError::Parse(format!("bad field element {text:?}")))?;
            Ok(self.from_int_idx(n))
        }
    }

    pub fn parse(&self, text: &str) -> Result<Gf, FieldError> {
        self.parse_idx(text).map(|v| Gf::raw(self.clone(), v))
    }

    /// The field-spec string this field round-trips through.
    pub fn spec_string(&self) -> String {
        if self.0.m == 1 {
            return self.0.p.to_string();
        }
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}:{}", self.0.p, self.0.m, coeffs.join(","))
    }
}

impl Tables {
    fn add_digitwise(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let mut out = 0;
        for &w in &self.place {
            let s = ((a / w) % self.p + (b / w) % self.p) % self.p;
            out += s * w;
        }
        out
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for GaloisField {}

impl Hash for GaloisField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.0.q, self.spec_string())
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

/// An element of a [`GaloisField`]. Carries its field; mixing fields in an operator panics,
/// the checked methods on [`GaloisField`] return [`FieldError::ContextMismatch`] instead.
#[derive(Clone)]
pub struct Gf {
    field: GaloisField,
    value: u32,
}

impl Gf {
    fn raw(field: GaloisField, value: u32) -> Self {
        Gf { field, value }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// Position in the field's enumeration order.
    pub fn index(&self) -> u32 {
        self.value
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn inv(&self) -> Option<Gf> {
        self.field
            .inv_idx(self.value)
            .map(|v| Gf::raw(self.field.clone(), v))
    }

    pub fn pow(&self, e: i64) -> Option<Gf> {
        self.field
            .pow_idx(self.value, e)
            .map(|v| Gf::raw(self.field.clone(), v))
    }

    fn expect_same(&self, other: &Gf) {
        assert!(
            self.field.same_field(&other.field),
            "arithmetic between elements of {:?} and {:?}",
            self.field,
            other.field
        );
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field.same_field(&other.field)
    }
}

impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.value.hash(state);
    }
}

impl PartialOrd for Gf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumeration order within a field; elements of different fields order by field first.
impl Ord for Gf {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = &self.field.0;
        let b = &other.field.0;
        (a.p, &a.modulus, self.value).cmp(&(b.p, &b.modulus, other.value))
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render_idx(self.value))
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.field.render_idx(self.value), self.field)
    }
}

macro_rules! gf_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Gf> for &Gf {
            type Output = Gf;
            fn $method(self, rhs: &Gf) -> Gf {
                self.expect_same(rhs);
                let f: fn(&GaloisField, u32, u32) -> u32 = $body;
                Gf::raw(self.field.clone(), f(&self.field, self.value, rhs.value))
            }
        }
        impl $trait<Gf> for Gf {
            type Output = Gf;
            fn $method(self, rhs: Gf) -> Gf {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Gf> for Gf {
            type Output = Gf;
            fn $method(self, rhs: &Gf) -> Gf {
                (&self).$method(rhs)
            }
        }
        impl $trait<Gf> for &Gf {
            type Output = Gf;
            fn $method(self, rhs: Gf) -> Gf {
                self.$method(&rhs)
            }
        }
    };
}

gf_binop!(Add, add, |f, a, b| f.add_idx(a, b));
gf_binop!(Sub, sub, |f, a, b| f.sub_idx(a, b));
gf_binop!(Mul, mul, |f, a, b| f.mul_idx(a, b));
gf_binop!(Div, div, |f, a, b| f.mul_idx(
    a,
    f.inv_idx(b).expect("division by zero in a finite field")
));

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        -&self
    }
}

impl Neg for &Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        Gf::raw(self.field.clone(), self.field.neg_idx(self.value))
    }
}
