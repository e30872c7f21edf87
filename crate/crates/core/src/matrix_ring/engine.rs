//! Compact matrix representations for the exhaustive kernels.
//!
//! Elements are addressed by their [`MatrixIndex`] rank; both engines must agree with
//! [`Matrix`] arithmetic exactly.

use std::fmt::Debug;
use std::hash::Hash;

use super::matrix::{check_shape, Packed, MAX_DIM};
use super::{Matrix, MatrixError, MatrixIndex};
use crate::budget::{space_size, Budget};
use crate::fields::GaloisField;

pub trait RingEngine: Sync + Send {
    type Elem: Copy + Eq + Hash + Debug + Send + Sync;

    fn field(&self) -> &GaloisField;
    fn dim(&self) -> usize;
    /// Number of matrices, `q^(n^2)`.
    fn size(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn rank(&self, a: Self::Elem) -> u32;
    fn unrank(&self, r: u32) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn to_matrix(&self, a: Self::Elem) -> Matrix {
        Matrix::from_index(self.field(), self.dim(), MatrixIndex(self.rank(a) as u64))
            .expect("rank in range")
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_matrix(&self, m: &Matrix) -> Self::Elem {
        self.unrank(m.index().0 as u32)
    }
}

fn ring_size(field: &GaloisField, n: usize, budget: &Budget) -> Result<u32, MatrixError> {
    check_shape(field, n)?;
    let size = space_size(field.order(), (n * n) as u64);
    budget.check_enumeration("matrix ring", size)?;
    Ok(size as u32)
}

/// Table-driven arithmetic on packed byte matrices, any supported field.
pub struct DenseRing {
    field: GaloisField,
    n: usize,
    q: u32,
    size: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

impl DenseRing {
    pub fn new(field: &GaloisField, n: usize, budget: &Budget) -> Result<Self, MatrixError> {
        let size = ring_size(field, n, budget)?;
        Ok(Self::build(field, n, size))
    }

    /// Arithmetic only, for rings too large to enumerate; `size` and `unrank` saturate.
    pub fn arithmetic(field: &GaloisField, n: usize) -> Result<Self, MatrixError> {
        check_shape(field, n)?;
        let size = space_size(field.order(), (n * n) as u64).min(u32::MAX as u128) as u32;
        Ok(Self::build(field, n, size))
    }

    fn build(field: &GaloisField, n: usize, size: u32) -> Self {
        let q = field.order() as u32;
        let mut add = Vec::with_capacity((q * q) as usize);
        let mut mul = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                add.push(field.add_idx(a, b) as u8);
                mul.push(field.mul_idx(a, b) as u8);
            }
        }
        let neg = (0..q).map(|a| field.neg_idx(a) as u8).collect();
        DenseRing {
            field: field.clone(),
            n,
            q,
            size,
            add,
            mul,
            neg,
        }
    }

    #[inline]
    fn fadd(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    fn fmul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }
}

impl RingEngine for DenseRing {
    type Elem = Packed;

    fn field(&self) -> &GaloisField {
        &self.field
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn size(&self) -> u32 {
        self.size
    }

    fn zero(&self) -> Packed {
        [0; MAX_DIM * MAX_DIM]
    }

    fn identity(&self) -> Packed {
        let mut e = self.zero();
        for i in 0..self.n {
            e[i * self.n + i] = 1;
        }
        e
    }

    #[inline]
    fn add(&self, a: Packed, b: Packed) -> Packed {
        let mut out = a;
        for i in 0..self.n * self.n {
            out[i] = self.fadd(a[i], b[i]);
        }
        out
    }

    #[inline]
    fn neg(&self, a: Packed) -> Packed {
        let mut out = a;
        for c in out[..self.n * self.n].iter_mut() {
            *c = self.neg[*c as usize];
        }
        out
    }

    #[inline]
    fn mul(&self, a: Packed, b: Packed) -> Packed {
        let n = self.n;
        let mut out = [0; MAX_DIM * MAX_DIM];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for l in 0..n {
                    acc = self.fadd(acc, self.fmul(a[i * n + l], b[l * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
        out
    }

    #[inline]
    fn rank(&self, a: Packed) -> u32 {
        a[..self.n * self.n]
            .iter()
            .fold(0, |acc, &c| acc * self.q + c as u32)
    }

    fn unrank(&self, r: u32) -> Packed {
        let mut out = self.zero();
        let mut rest = r;
        for slot in (0..self.n * self.n).rev() {
            out[slot] = (rest % self.q) as u8;
            rest /= self.q;
        }
        out
    }

    fn to_matrix(&self, a: Packed) -> Matrix {
        Matrix::from_packed(&self.field, self.n, a)
    }

    fn from_matrix(&self, m: &Matrix) -> Packed {
        m.packed()
    }
}

/// Bit-packed matrices over GF(2): the word equals the matrix rank, so entry (i, j) is bit
/// `n^2 - 1 - (i n + j)`. Addition is XOR; multiplication uses a full table for n <= 3.
pub struct Gf2Ring {
    field: GaloisField,
    n: usize,
    table: Option<Vec<u16>>,
}

impl Gf2Ring {
    pub fn new(n: usize, budget: &Budget) -> Result<Self, MatrixError> {
        let field = GaloisField::prime(2)?;
        let size = ring_size(&field, n, budget)?;
        let mut ring = Gf2Ring {
            field,
            n,
            table: None,
        };
        if n <= 3 {
            let mut table = Vec::with_capacity((size * size) as usize);
            for a in 0..size {
                for b in 0..size {
                    table.push(ring.mul_direct(a as u16, b as u16));
                }
            }
            ring.table = Some(table);
        }
        Ok(ring)
    }

    #[inline]
    fn row(&self, a: u16, i: usize) -> u16 {
        let n = self.n;
        (a >> (n * n - n - i * n)) & ((1 << n) - 1)
    }

    fn mul_direct(&self, a: u16, b: u16) -> u16 {
        let n = self.n;
        let mut out = 0u16;
        for i in 0..n {
            let ra = self.row(a, i);
            let mut acc = 0u16;
            for l in 0..n {
                if ra >> (n - 1 - l) & 1 == 1 {
                    acc ^= self.row(b, l);
                }
            }
            out |= acc << (n * n - n - i * n);
        }
        out
    }
}

impl RingEngine for Gf2Ring {
    type Elem = u16;

    fn field(&self) -> &GaloisField {
        &self.field
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn size(&self) -> u32 {
        1 << (self.n * self.n)
    }

    fn zero(&self) -> u16 {
        0
    }

    fn identity(&self) -> u16 {
        (0..self.n).fold(0, |acc, i| {
            acc | 1 << (self.n * self.n - 1 - (i * self.n + i))
        })
    }

    #[inline]
    fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    fn neg(&self, a: u16) -> u16 {
        a
    }

    #[inline]
    fn mul(&self, a: u16, b: u16) -> u16 {
        match &self.table {
            Some(t) => t[((a as usize) << (self.n * self.n)) | b as usize],
            None => self.mul_direct(a, b),
        }
    }

    #[inline]
    fn rank(&self, a: u16) -> u32 {
        a as u32
    }

    #[inline]
    fn unrank(&self, r: u32) -> u16 {
        r as u16
    }
}
