//! Exhaustive enumeration of balanced tuples, independent of every closed-form construction.
//!
//! A balanced k-tuple is determined by its first k-1 entries (the last is minus their sum),
//! so one pass over `q^(k-1)` prefixes sees every balanced tuple exactly once.

use super::FactorError;
use crate::budget::{space_size, Budget};
use crate::fields::{GaloisField, Gf};

/// Walks all prefixes in lexicographic order (first factor most significant). `visit` gets the
/// full tuple, its product and whether it is a power tuple; returning `true` stops the walk.
fn walk_balanced(field: &GaloisField, k: usize, visit: &mut impl FnMut(&[u32], u32, bool) -> bool) {
    #[allow(clippy::too_many_arguments)]
    fn go(
        field: &GaloisField,
        q: u32,
        tuple: &mut Vec<u32>,
        len: usize,
        sum: u32,
        prod: u32,
        uniform: bool,
        visit: &mut impl FnMut(&[u32], u32, bool) -> bool,
    ) -> bool {
        if tuple.len() == len {
            let last = field.neg_idx(sum);
            let power = uniform && tuple.first().is_none_or(|&f| f == last);
            tuple.push(last);
            let stop = visit(tuple, field.mul_idx(prod, last), power);
            tuple.pop();
            return stop;
        }
        for x in 0..q {
            let still = uniform && tuple.first().is_none_or(|&f| f == x);
            tuple.push(x);
            let stop = go(
                field,
                q,
                tuple,
                len,
                field.add_idx(sum, x),
                field.mul_idx(prod, x),
                still,
                visit,
            );
            tuple.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut tuple = Vec::with_capacity(k);
    go(
        field,
        field.order() as u32,
        &mut tuple,
        k - 1,
        0,
        1,
        true,
        visit,
    );
}

fn check(field: &GaloisField, k: usize, budget: &Budget) -> Result<(), FactorError> {
    if k < 2 {
        return Err(FactorError::InvalidFactorCount {
            k,
            reason: "at least two factors are required",
        });
    }
    budget.check_iterations("scalar oracle", space_size(field.order(), k as u64 - 1))?;
    Ok(())
}

/// First balanced k-tuple (non-power if requested) with product `a`, in enumeration order.
pub fn oracle_search(
    a: &Gf,
    k: usize,
    require_nonpower: bool,
    budget: &Budget,
) -> Result<Option<Vec<Gf>>, FactorError> {
    let field = a.field();
    check(field, k, budget)?;
    let target = a.index();
    let mut hit = None;
    walk_balanced(field, k, &mut |tuple, prod, power| {
        if prod == target && !(require_nonpower && power) {
            hit = Some(tuple.to_vec());
            true
        } else {
            false
        }
    });
    Ok(hit.map(|t| {
        t.into_iter()
            .map(|i| field.element(i).expect("in range"))
            .collect()
    }))
}

/// Which targets admit a balanced (resp. non-power balanced) k-factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSweep {
    pub q: u64,
    pub k: usize,
    /// Indexed by element index.
    pub balanced: Vec<bool>,
    pub nonpower: Vec<bool>,
}

impl OracleSweep {
    pub fn all_balanced(&self) -> bool {
        self.balanced.iter().all(|&b| b)
    }

    pub fn all_nonpower(&self) -> bool {
        self.nonpower.iter().all(|&b| b)
    }

    pub fn missing_balanced(&self) -> Vec<u32> {
        missing(&self.balanced)
    }

    pub fn missing_nonpower(&self) -> Vec<u32> {
        missing(&self.nonpower)
    }
}

fn missing(marks: &[bool]) -> Vec<u32> {
    marks
        .iter()
        .enumerate()
        .filter(|(_, &m)| !m)
        .map(|(i, _)| i as u32)
        .collect()
}

/// One pass over all balanced k-tuples of `field`, recording every product seen.
pub fn oracle_sweep(
    field: &GaloisField,
    k: usize,
    budget: &Budget,
) -> Result<OracleSweep, FactorError> {
    check(field, k, budget)?;
    let q = field.order() as usize;
    let mut balanced = vec![false; q];
    let mut nonpower = vec![false; q];
    let mut remaining = 2 * q;
    walk_balanced(field, k, &mut |_, prod, power| {
        let p = prod as usize;
        if !balanced[p] {
            balanced[p] = true;
            remaining -= 1;
        }
        if !power && !nonpower[p] {
            nonpower[p] = true;
            remaining -= 1;
        }
        remaining == 0
    });
    Ok(OracleSweep {
        q: field.order(),
        k,
        balanced,
        nonpower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_pair() {
        let f = GaloisField::prime(2).unwrap();
        let t = oracle_search(&f.one(), 2, false, &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(t, vec![f.one(), f.one()]);
    }

    #[test]
    fn gf3_six_and_eight_factors() {
        let f = GaloisField::prime(3).unwrap();
        let b = Budget::default();
        assert_eq!(oracle_search(&f.one(), 6, true, &b).unwrap(), None);
        assert!(oracle_search(&f.one(), 6, false, &b).unwrap().is_some());
        let t = oracle_search(&f.one(), 8, true, &b).unwrap().unwrap();
        let twos = t.iter().filter(|x| **x == f.from_integer(2)).count();
        let ones = t.iter().filter(|x| x.is_one()).count();
        assert_eq!((twos, ones), (4, 4));
    }

    #[test]
    fn first_hit_is_lexicographic() {
        // GF(5), a = 2, k = 3: brute force over all triples in the same order
        let f = GaloisField::prime(5).unwrap();
        let a = f.from_integer(2);
        let got = oracle_search(&a, 3, true, &Budget::default())
            .unwrap()
            .unwrap();
        let mut expected = None;
        'outer: for x in f.elements() {
            for y in f.elements() {
                let z = -(&x + &y);
                if &x * &y * &z == a && !(x == y && y == z) {
                    expected = Some(vec![x, y, z]);
                    break 'outer;
                }
            }
        }
        assert_eq!(Some(got), expected);
    }

    #[test]
    fn sweep_matches_search() {
        let f = GaloisField::prime(7).unwrap();
        let b = Budget::default();
        for k in 2..=5 {
            let sweep = oracle_sweep(&f, k, &b).unwrap();
            for a in f.elements() {
                let i = a.index() as usize;
                assert_eq!(
                    sweep.balanced[i],
                    oracle_search(&a, k, false, &b).unwrap().is_some()
                );
                assert_eq!(
                    sweep.nonpower[i],
                    oracle_search(&a, k, true, &b).unwrap().is_some()
                );
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let f = GaloisField::prime(13).unwrap();
        let err = oracle_search(&f.one(), 9, false, &Budget::with_iterations(1000)).unwrap_err();
        assert!(matches!(err, FactorError::Budget(_)));
    }
}
