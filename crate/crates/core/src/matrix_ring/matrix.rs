use std::fmt;

use super::MatrixError;
use crate::fields::{GaloisField, Gf};

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;
/// Largest supported field order for matrices (entries are stored as bytes).
pub const MAX_MATRIX_FIELD: u64 = 256;

/// Row-major entries as field indices; only the first n*n slots are used.
pub type Packed = [u8; MAX_DIM * MAX_DIM];

/// Position of a matrix in the row-major lexicographic enumeration (first entry most
/// significant), so the zero matrix has index 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixIndex(pub u64);

/// A dense n x n matrix over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: GaloisField,
    n: usize,
    cells: Packed,
}

pub(crate) fn check_shape(field: &GaloisField, n: usize) -> Result<(), MatrixError> {
    if n == 0 || n > MAX_DIM {
        return Err(MatrixError::Unsupported(format!(
            "dimension {n} outside 1..={MAX_DIM}"
        )));
    }
    if field.order() > MAX_MATRIX_FIELD {
        return Err(MatrixError::Unsupported(format!(
            "matrices over fields larger than {MAX_MATRIX_FIELD} elements"
        )));
    }
    Ok(())
}

impl Matrix {
    pub fn zero(field: &GaloisField, n: usize) -> Result<Self, MatrixError> {
        check_shape(field, n)?;
        Ok(Matrix {
            field: field.clone(),
            n,
            cells: [0; MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(field: &GaloisField, n: usize) -> Result<Self, MatrixError> {
        Self::scalar(&field.one(), n)
    }

    /// `a E`.
    pub fn scalar(a: &Gf, n: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zero(a.field(), n)?;
        for i in 0..n {
            m.cells[i * n + i] = a.index() as u8;
        }
        Ok(m)
    }

    /// `a E + J`: `a` on the diagonal, 1 on the superdiagonal.
    pub fn jordan_cell(a: &Gf, n: usize) -> Result<Self, MatrixError> {
        let mut m = Self::scalar(a, n)?;
        for i in 0..n.saturating_sub(1) {
            m.cells[i * n + i + 1] = 1;
        }
        Ok(m)
    }

    /// Row-major entries given as field indices.
    pub fn from_indices(
        field: &GaloisField,
        n: usize,
        entries: &[u32],
    ) -> Result<Self, MatrixError> {
        check_shape(field, n)?;
        if entries.len() != n * n {
            return Err(MatrixError::ShapeMismatch);
        }
        let mut m = Self::zero(field, n)?;
        for (slot, &e) in m.cells.iter_mut().zip(entries) {
            if e as u64 >= field.order() {
                return Err(MatrixError::Parse(format!("entry index {e} out of range")));
            }
            *slot = e as u8;
        }
        Ok(m)
    }

    pub fn from_elements(
        field: &GaloisField,
        n: usize,
        entries: &[Gf],
    ) -> Result<Self, MatrixError> {
        if entries.iter().any(|e| !e.field().same_field(field)) {
            return Err(MatrixError::ContextMismatch);
        }
        let idx: Vec<u32> = entries.iter().map(Gf::index).collect();
        Self::from_indices(field, n, &idx)
    }

    pub(crate) fn from_packed(field: &GaloisField, n: usize, cells: Packed) -> Self {
        Matrix {
            field: field.clone(),
            n,
            cells,
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn packed(&self) -> Packed {
        self.cells
    }

    #[inline]
    pub fn entry_index(&self, i: usize, j: usize) -> u32 {
        self.cells[i * self.n + j] as u32
    }

    pub fn get(&self, i: usize, j: usize) -> Gf {
        self.field
            .element(self.entry_index(i, j))
            .expect("stored entries are in range")
    }

    pub fn entries(&self) -> Vec<u32> {
        self.cells[..self.n * self.n]
            .iter()
            .map(|&c| c as u32)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == 0)
    }

    fn compatible(&self, other: &Matrix) -> Result<(), MatrixError> {
        if !self.field.same_field(&other.field) {
            return Err(MatrixError::ContextMismatch);
        }
        if self.n != other.n {
            return Err(MatrixError::ShapeMismatch);
        }
        Ok(())
    }

    fn map2(&self, other: &Matrix, f: impl Fn(u32, u32) -> u32) -> Result<Matrix, MatrixError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for i in 0..self.n * self.n {
            out.cells[i] = f(self.cells[i] as u32, other.cells[i] as u32) as u8;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.map2(other, |a, b| self.field.add_idx(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.map2(other, |a, b| self.field.sub_idx(a, b))
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for c in out.cells[..self.n * self.n].iter_mut() {
            *c = self.field.neg_idx(*c as u32) as u8;
        }
        out
    }

    pub fn scale(&self, a: &Gf) -> Result<Matrix, MatrixError> {
        if !a.field().same_field(&self.field) {
            return Err(MatrixError::ContextMismatch);
        }
        let mut out = self.clone();
        for c in out.cells[..self.n * self.n].iter_mut() {
            *c = self.field.mul_idx(*c as u32, a.index()) as u8;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.compatible(other)?;
        let n = self.n;
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for l in 0..n {
                    acc = f.add_idx(
                        acc,
                        f.mul_idx(self.entry_index(i, l), other.entry_index(l, j)),
                    );
                }
                out.cells[i * n + j] = acc as u8;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.n).expect("shape already checked");
        for _ in 0..e {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    pub fn commutes(&self, other: &Matrix) -> Result<bool, MatrixError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.cells[j * self.n + i] = self.cells[i * self.n + j];
            }
        }
        out
    }

    pub fn trace(&self) -> Gf {
        let mut acc = 0;
        for i in 0..self.n {
            acc = self.field.add_idx(acc, self.entry_index(i, i));
        }
        self.field.element(acc).expect("in range")
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry_index(i, j)).collect())
            .collect()
    }

    /// Determinant by Gaussian elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Gf {
        let f = &self.field;
        let n = self.n;
        let mut rows = self.rows();
        let mut det = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| rows[r][col] != 0) else {
                return f.zero();
            };
            if pivot != col {
                rows.swap(pivot, col);
                det = f.neg_idx(det);
            }
            let p = rows[col][col];
            det = f.mul_idx(det, p);
            let p_inv = f.inv_idx(p).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul_idx(rows[r][col], p_inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = f.mul_idx(factor, rows[col][c]);
                    rows[r][c] = f.sub_idx(rows[r][c], v);
                }
            }
        }
        f.element(det).expect("in range")
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut left = self.rows();
        let mut right: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| left[r][col] != 0)?;
            left.swap(pivot, col);
            right.swap(pivot, col);
            let p_inv = f.inv_idx(left[col][col]).expect("pivot is nonzero");
            for c in 0..n {
                left[col][c] = f.mul_idx(left[col][c], p_inv);
                right[col][c] = f.mul_idx(right[col][c], p_inv);
            }
            for r in 0..n {
                if r == col || left[r][col] == 0 {
                    continue;
                }
                let factor = left[r][col];
                for c in 0..n {
                    let lv = f.mul_idx(factor, left[col][c]);
                    left[r][c] = f.sub_idx(left[r][c], lv);
                    let rv = f.mul_idx(factor, right[col][c]);
                    right[r][c] = f.sub_idx(right[r][c], rv);
                }
            }
        }
        let flat: Vec<u32> = right.into_iter().flatten().collect();
        Matrix::from_indices(f, n, &flat).ok()
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn index(&self) -> MatrixIndex {
        let q = self.field.order();
        MatrixIndex(
            self.cells[..self.n * self.n]
                .iter()
                .fold(0u64, |acc, &c| acc * q + c as u64),
        )
    }

    pub fn from_index(
        field: &GaloisField,
        n: usize,
        index: MatrixIndex,
    ) -> Result<Matrix, MatrixError> {
        check_shape(field, n)?;
        let q = field.order();
        let total = q.checked_pow((n * n) as u32).unwrap_or(u64::MAX);
        if index.0 >= total {
            return Err(MatrixError::Parse(format!(
                "matrix index {} out of range",
                index.0
            )));
        }
        let mut m = Matrix::zero(field, n)?;
        let mut rest = index.0;
        for slot in (0..n * n).rev() {
            m.cells[slot] = (rest % q) as u8;
            rest /= q;
        }
        Ok(m)
    }

    /// Parses `r0c0,r0c1;r1c0,r1c1` with integer or `(c0 c1 ...)` entries.
    pub fn parse(field: &GaloisField, text: &str) -> Result<Matrix, MatrixError> {
        let rows: Vec<Vec<u32>> = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| field.parse_idx(e).map_err(MatrixError::from))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::Parse(format!("matrix {text:?} is not square")));
        }
        let flat: Vec<u32> = rows.into_iter().flatten().collect();
        Matrix::from_indices(field, n, &flat)
    }

    pub fn render(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.field.render_idx(self.entry_index(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] over {}", self.render(), self.field)
    }
}
