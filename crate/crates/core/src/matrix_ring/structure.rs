use std::collections::BTreeSet;

use super::matrix::check_shape;
use super::{Matrix, MatrixError, MatrixIndex};
use crate::budget::{space_size, Budget};
use crate::fields::{GaloisField, Gf};

/// Number of n x n matrices over `field`.
pub fn matrix_count(field: &GaloisField, n: usize) -> u128 {
    space_size(field.order(), (n * n) as u64)
}

/// All n x n matrices in index order (zero matrix first).
pub fn enumerate_matrices(
    field: &GaloisField,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Matrix>, MatrixError> {
    check_shape(field, n)?;
    let total = matrix_count(field, n);
    budget.check_enumeration("matrix enumeration", total)?;
    (0..total as u64)
        .map(|i| Matrix::from_index(field, n, MatrixIndex(i)))
        .collect()
}

/// Coefficients `c` with `sum c_i columns[i] = target`, if any (free variables set to zero).
#[allow(clippy::needless_range_loop)]
fn solve(field: &GaloisField, columns: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let m = columns.len();
    let mut rows: Vec<Vec<u32>> = (0..target.len())
        .map(|r| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(p, row);
        let inv = field.inv_idx(rows[row][col]).expect("nonzero pivot");
        for c in col..=m {
            rows[row][c] = field.mul_idx(rows[row][c], inv);
        }
        for r in 0..rows.len() {
            if r != row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..=m {
                    let v = field.mul_idx(factor, rows[row][c]);
                    rows[r][c] = field.sub_idx(rows[r][c], v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| r[m] != 0) {
        return None;
    }
    let mut coeffs = vec![0; m];
    for (r, &col) in pivots.iter().enumerate() {
        coeffs[col] = rows[r][m];
    }
    Some(coeffs)
}

/// Monic minimal polynomial of `a`, constant term first, found as the first linear dependence
/// among `E, A, A^2, ...`.
pub fn minimal_polynomial(a: &Matrix) -> Vec<Gf> {
    let field = a.field();
    let mut powers = vec![Matrix::identity(field, a.n()).expect("valid shape")];
    loop {
        let next = powers.last().unwrap().mul(a).expect("same shape");
        let columns: Vec<Vec<u32>> = powers.iter().map(Matrix::entries).collect();
        if let Some(c) = solve(field, &columns, &next.entries()) {
            let mut poly: Vec<Gf> = c.iter().map(|&ci| -field.element(ci).unwrap()).collect();
            poly.push(field.one());
            return poly;
        }
        powers.push(next);
    }
}

/// All matrices commuting with `a`, in index order.
pub fn centralizer(a: &Matrix, budget: &Budget) -> Result<Vec<Matrix>, MatrixError> {
    let all = enumerate_matrices(a.field(), a.n(), budget)?;
    let mut out = Vec::new();
    for x in all {
        if x.commutes(a)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Rank of the matrix whose rows are `rows`.
#[allow(clippy::needless_range_loop)]
fn rank(field: &GaloisField, mut rows: Vec<Vec<u32>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(p, row);
        let inv = field.inv_idx(rows[row][col]).expect("nonzero pivot");
        for r in row + 1..rows.len() {
            if rows[r][col] != 0 {
                let factor = field.mul_idx(rows[r][col], inv);
                for c in col..width {
                    let v = field.mul_idx(factor, rows[row][c]);
                    rows[r][c] = field.sub_idx(rows[r][c], v);
                }
            }
        }
        row += 1;
    }
    row
}

/// Dimension of the centralizer of `a`: `n^2` minus the rank of `X -> AX - XA`.
/// Works where the centralizer is too large to enumerate.
pub fn centralizer_dimension(a: &Matrix) -> usize {
    let field = a.field();
    let n = a.n();
    let zero = field.zero();
    let one = field.one();
    let images: Vec<Vec<u32>> = (0..n * n)
        .map(|unit| {
            let entries: Vec<Gf> = (0..n * n)
                .map(|i| if i == unit { one.clone() } else { zero.clone() })
                .collect();
            let x = Matrix::from_elements(field, n, &entries).expect("valid shape");
            a.mul(&x)
                .and_then(|ax| ax.sub(&x.mul(a)?))
                .expect("same shape")
                .entries()
        })
        .collect();
    n * n - rank(field, images)
}

/// The commutative algebra `F[A]` spanned by `E, A, ..., A^(d-1)`, d = deg of the minimal polynomial.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    pub generator: Matrix,
    pub basis: Vec<Matrix>,
    /// All `q^d` elements. Element `t` has coefficient vector given by the base-q digits of `t`,
    /// the coefficient of `E` most significant.
    pub elements: Vec<Matrix>,
}

impl Subalgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in the power basis, if `x` lies in the algebra.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Gf>> {
        if !x.field().same_field(self.generator.field()) || x.n() != self.generator.n() {
            return None;
        }
        let field = x.field();
        let columns: Vec<Vec<u32>> = self.basis.iter().map(Matrix::entries).collect();
        solve(field, &columns, &x.entries())
            .map(|c| c.into_iter().map(|ci| field.element(ci).unwrap()).collect())
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.coordinates(x).is_some()
    }
}

/// `E, A, ..., A^(d-1)`.
fn power_basis(a: &Matrix) -> Vec<Matrix> {
    let d = minimal_polynomial(a).len() - 1;
    let mut basis = vec![Matrix::identity(a.field(), a.n()).expect("valid shape")];
    for _ in 1..d {
        let next = basis.last().unwrap().mul(a).expect("same shape");
        basis.push(next);
    }
    basis
}

/// Whether `x` is a polynomial in `a`, without enumerating the algebra.
pub fn in_generated_subalgebra(a: &Matrix, x: &Matrix) -> bool {
    if !x.field().same_field(a.field()) || x.n() != a.n() {
        return false;
    }
    let columns: Vec<Vec<u32>> = power_basis(a).iter().map(Matrix::entries).collect();
    solve(a.field(), &columns, &x.entries()).is_some()
}

pub fn subalgebra_of(a: &Matrix, budget: &Budget) -> Result<Subalgebra, MatrixError> {
    let field = a.field();
    let q = field.order();
    let basis = power_basis(a);
    let size = space_size(q, basis.len() as u64);
    budget.check_enumeration("subalgebra enumeration", size)?;
    let mut elements = Vec::with_capacity(size as usize);
    for t in 0..size as u64 {
        let mut acc = Matrix::zero(field, a.n())?;
        let mut rest = t;
        for b in basis.iter().rev() {
            let c = field.element((rest % q) as u32)?;
            rest /= q;
            acc = acc.add(&b.scale(&c)?)?;
        }
        elements.push(acc);
    }
    Ok(Subalgebra {
        generator: a.clone(),
        basis,
        elements,
    })
}

/// GL(n, q) in index order.
pub fn general_linear_group(
    field: &GaloisField,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Matrix>, MatrixError> {
    Ok(enumerate_matrices(field, n, budget)?
        .into_iter()
        .filter(Matrix::is_invertible)
        .collect())
}

#[derive(Debug, Clone)]
pub struct SimilarityClass {
    /// Members in index order.
    pub members: Vec<Matrix>,
}

impl SimilarityClass {
    /// The member that comes first in enumeration order.
    pub fn canonical(&self) -> &Matrix {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.members
            .first()
            .is_some_and(|m| m.field().same_field(x.field()) && m.n() == x.n())
            && self
                .members
                .binary_search_by_key(&x.index(), Matrix::index)
                .is_ok()
    }

    pub fn indices(&self) -> Vec<MatrixIndex> {
        self.members.iter().map(Matrix::index).collect()
    }
}

/// The orbit `{g A g^-1}` over all of GL(n, q).
pub fn similarity_class(a: &Matrix, budget: &Budget) -> Result<SimilarityClass, MatrixError> {
    let group = general_linear_group(a.field(), a.n(), budget)?;
    let mut seen = BTreeSet::new();
    for g in &group {
        let inv = g.inverse().expect("group elements are invertible");
        let conj = g.mul(a)?.mul(&inv)?;
        seen.insert(conj.index());
    }
    let members = seen
        .into_iter()
        .map(|i| Matrix::from_index(a.field(), a.n(), i))
        .collect::<Result<_, _>>()?;
    Ok(SimilarityClass { members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> GaloisField {
        GaloisField::prime(p).unwrap()
    }

    #[test]
    fn counts() {
        let b = Budget::default();
        let all = enumerate_matrices(&gf(2), 2, &b).unwrap();
        assert_eq!(all.len(), 16);
        assert!(all[0].is_zero());
        assert_eq!(enumerate_matrices(&gf(2), 3, &b).unwrap().len(), 512);
        assert_eq!(general_linear_group(&gf(2), 2, &b).unwrap().len(), 6);
        assert_eq!(general_linear_group(&gf(2), 3, &b).unwrap().len(), 168);
        assert_eq!(general_linear_group(&gf(3), 2, &b).unwrap().len(), 48);
        assert!(enumerate_matrices(
            &gf(2),
            4,
            &Budget {
                enumeration_cap: 100,
                ..b
            }
        )
        .is_err());
    }

    #[test]
    fn minimal_polynomials() {
        let f = gf(5);
        let one = f.one();
        let e = Matrix::identity(&f, 2).unwrap();
        assert_eq!(minimal_polynomial(&e), vec![-&one, one.clone()]);
        let j = Matrix::jordan_cell(&one, 2).unwrap();
        // (x - 1)^2 = x^2 - 2x + 1
        assert_eq!(
            minimal_polynomial(&j),
            vec![one.clone(), f.from_integer(-2), one.clone()]
        );
        let n3 = Matrix::jordan_cell(&f.zero(), 3).unwrap();
        assert_eq!(minimal_polynomial(&n3).len(), 4);
    }

    #[test]
    fn centralizer_of_nilpotent_cells() {
        let b = Budget::default();
        for p in [2, 3] {
            for n in 2..=3 {
                let f = gf(p);
                let j = Matrix::jordan_cell(&f.zero(), n).unwrap();
                let c = centralizer(&j, &b).unwrap();
                assert_eq!(c.len() as u64, p.pow(n as u32));
                assert_eq!(centralizer_dimension(&j), n);
            }
        }
        let e = Matrix::identity(&gf(2), 2).unwrap();
        assert_eq!(centralizer(&e, &b).unwrap().len(), 16);
        assert_eq!(centralizer_dimension(&e), 4);
        // the centralizer is a subspace, so its size is q^dim
        let f = gf(3);
        for i in 0..81 {
            let a = Matrix::from_index(&f, 2, MatrixIndex(i)).unwrap();
            let size = centralizer(&a, &b).unwrap().len() as u64;
            assert_eq!(size, 3u64.pow(centralizer_dimension(&a) as u32), "{a}");
        }
    }

    #[test]
    fn subalgebras() {
        let b = Budget::default();
        let f5 = gf(5);
        let e = Matrix::identity(&f5, 2).unwrap();
        let s = subalgebra_of(&e, &b).unwrap();
        assert_eq!(s.elements.len(), 5);
        assert!(s
            .elements
            .iter()
            .all(|x| x.transpose() == *x && x.entry_index(0, 1) == 0));
        let j1 = Matrix::jordan_cell(&f5.one(), 2).unwrap();
        let s = subalgebra_of(&j1, &b).unwrap();
        assert_eq!(s.elements.len(), 25);
        for x in &s.elements {
            assert_eq!(x.entry_index(1, 0), 0);
            assert_eq!(x.entry_index(0, 0), x.entry_index(1, 1));
            for y in &s.elements {
                assert!(x.commutes(y).unwrap());
            }
        }
        let f2 = gf(2);
        let j = Matrix::jordan_cell(&f2.zero(), 2).unwrap();
        let s = subalgebra_of(&j, &b).unwrap();
        let got: BTreeSet<String> = s.elements.iter().map(Matrix::render).collect();
        let want: BTreeSet<String> = ["0,0;0,0", "1,0;0,1", "0,1;0,0", "1,1;0,1"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(got, want);
        assert!(s.contains(&Matrix::parse(&f2, "1,1;0,1").unwrap()));
        assert!(!s.contains(&Matrix::parse(&f2, "1,0;1,1").unwrap()));
    }

    #[test]
    fn similarity_classes() {
        let b = Budget::default();
        let f = gf(2);
        let m = |s| Matrix::parse(&f, s).unwrap();
        let c = similarity_class(&m("1,0;1,1"), &b).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.contains(&m("1,1;0,1")));
        let c = similarity_class(&m("1,1;1,0"), &b).unwrap();
        assert!(c.contains(&m("0,1;1,1")));
        assert_eq!(c.canonical(), &m("0,1;1,1"));
        assert_eq!(similarity_class(&m("1,0;0,1"), &b).unwrap().len(), 1);
    }
}
