//! Single-target balanced factorization of a matrix, commuting or not.

use super::certificate::{MatrixCertificate, SearchMethod};
use super::commuting::{centralizer_search, subalgebra_search};
use super::SearchError;
use crate::budget::{space_size, Budget, StepCounter};
use crate::matrix_ring::{DenseRing, Matrix, RingEngine};

fn certify(
    a: &Matrix,
    factors: Vec<Matrix>,
    commuting: bool,
    in_subalgebra: bool,
    method: SearchMethod,
) -> Result<MatrixCertificate, SearchError> {
    Ok(MatrixCertificate::checked(
        a.clone(),
        factors,
        commuting,
        in_subalgebra,
        method,
    )?)
}

/// Commuting factorization: the algebra generated by `a` first, then the full centralizer,
/// which is complete.
fn commuting(a: &Matrix, k: usize, budget: &Budget) -> Result<MatrixCertificate, SearchError> {
    if let Some(f) = subalgebra_search(a, k, budget)? {
        return certify(a, f, true, true, SearchMethod::SubalgebraSearch);
    }
    match centralizer_search(a, k, budget)? {
        Some(f) => certify(a, f, true, false, SearchMethod::CentralizerSearch),
        None => Err(SearchError::NotFound { proven: true }),
    }
}

fn two_factor(ring: &DenseRing, a: &Matrix) -> Result<Option<Vec<Matrix>>, SearchError> {
    let target = ring.from_matrix(a);
    for r in 0..ring.size() {
        let x = ring.unrank(r);
        let minus = ring.neg(x);
        if ring.mul(x, minus) == target {
            return Ok(Some(vec![ring.to_matrix(x), ring.to_matrix(minus)]));
        }
    }
    Ok(None)
}

fn three_factor(
    ring: &DenseRing,
    a: &Matrix,
    budget: &Budget,
) -> Result<Option<Vec<Matrix>>, SearchError> {
    let size = ring.size();
    budget.check_iterations("pair scan", space_size(size as u64, 2))?;
    let target = ring.from_matrix(a);
    for r1 in 0..size {
        let x1 = ring.unrank(r1);
        for r2 in 0..size {
            let x2 = ring.unrank(r2);
            let x3 = ring.neg(ring.add(x1, x2));
            if ring.mul(ring.mul(x1, x2), x3) == target {
                return Ok(Some(
                    [x1, x2, x3].iter().map(|&x| ring.to_matrix(x)).collect(),
                ));
            }
        }
    }
    Ok(None)
}

/// Meet-in-the-middle for one target: for each pair sum S, match products `p` of pairs
/// summing to S against products `p'` of pairs summing to -S with `p p' = A`.
fn four_factor(
    ring: &DenseRing,
    a: &Matrix,
    budget: &Budget,
) -> Result<Option<Vec<Matrix>>, SearchError> {
    let size = ring.size();
    let all: Vec<_> = (0..size).map(|r| ring.unrank(r)).collect();
    let inverse: Vec<Option<u32>> = all
        .iter()
        .map(|&x| ring.to_matrix(x).inverse().map(|m| m.index().0 as u32))
        .collect();
    let target = ring.from_matrix(a);
    let singular_target = !a.is_invertible();
    let mut counter = StepCounter::new("meet-in-the-middle search", budget);

    let table = |s: u32, counter: &mut StepCounter| -> Result<Vec<u32>, SearchError> {
        let sum = all[s as usize];
        let mut first = vec![u32::MAX; size as usize];
        for (r1, &x1) in all.iter().enumerate() {
            counter.step()?;
            let p = ring.rank(ring.mul(x1, ring.sub(sum, x1)));
            if first[p as usize] == u32::MAX {
                first[p as usize] = r1 as u32;
            }
        }
        Ok(first)
    };
    let witness = |s: u32, r1: u32, r3: u32| -> Vec<Matrix> {
        let neg_s = ring.neg(all[s as usize]);
        let x1 = all[r1 as usize];
        let x3 = all[r3 as usize];
        [x1, ring.sub(all[s as usize], x1), x3, ring.sub(neg_s, x3)]
            .iter()
            .map(|&x| ring.to_matrix(x))
            .collect()
    };

    for s in 0..size {
        let neg_s = ring.rank(ring.neg(all[s as usize]));
        let left = table(s, &mut counter)?;
        let right = table(neg_s, &mut counter)?;
        let present =
            |t: &[u32]| -> Vec<u32> { (0..size).filter(|&p| t[p as usize] != u32::MAX).collect() };
        let lefts = present(&left);
        let rights = present(&right);
        // p invertible: p' = p^-1 A
        for &p in &lefts {
            counter.step()?;
            if let Some(pi) = inverse[p as usize] {
                let p2 = ring.rank(ring.mul(all[pi as usize], target));
                if right[p2 as usize] != u32::MAX {
                    return Ok(Some(witness(s, left[p as usize], right[p2 as usize])));
                }
            }
        }
        if !singular_target {
            continue;
        }
        // p' invertible: p = A p'^-1
        for &p2 in &rights {
            counter.step()?;
            if let Some(pi) = inverse[p2 as usize] {
                let p = ring.rank(ring.mul(target, all[pi as usize]));
                if left[p as usize] != u32::MAX {
                    return Ok(Some(witness(s, left[p as usize], right[p2 as usize])));
                }
            }
        }
        // both singular
        for &p in lefts.iter().filter(|&&p| inverse[p as usize].is_none()) {
            for &p2 in rights.iter().filter(|&&p2| inverse[p2 as usize].is_none()) {
                counter.step()?;
                if ring.mul(all[p as usize], all[p2 as usize]) == target {
                    return Ok(Some(witness(s, left[p as usize], right[p2 as usize])));
                }
            }
        }
    }
    Ok(None)
}

/// A verified balanced k-factorization of `a`.
///
/// With `commuting`, searches the generated algebra and then the centralizer (complete).
/// Otherwise: exhaustive for k <= 4; for k >= 5 tries the generated algebra and then a
/// (k-2)-factorization of `-A` extended by `E, -E`, reporting `NotFound { proven: false }`
/// when both fail.
pub fn general_factor(
    a: &Matrix,
    k: usize,
    commuting_only: bool,
    budget: &Budget,
) -> Result<MatrixCertificate, SearchError> {
    if k < 2 {
        return Err(SearchError::Unsupported(
            "at least two factors are required".into(),
        ));
    }
    if commuting_only {
        return commuting(a, k, budget);
    }
    let ring = DenseRing::new(a.field(), a.n(), budget)?;
    let (found, method) = match k {
        2 => (two_factor(&ring, a)?, SearchMethod::PairScan),
        3 => (three_factor(&ring, a, budget)?, SearchMethod::PairScan),
        4 => (
            four_factor(&ring, a, budget)?,
            SearchMethod::MeetInTheMiddle,
        ),
        _ => {
            match subalgebra_search(a, k, budget) {
                Ok(Some(f)) => return certify(a, f, true, true, SearchMethod::SubalgebraSearch),
                Ok(None) | Err(SearchError::Budget(_)) => {}
                Err(e) => return Err(e),
            }
            return match general_factor(&a.neg(), k - 2, false, budget) {
                Ok(inner) => {
                    let ext = inner.sign_extended();
                    certify(a, ext.factors, false, false, SearchMethod::SignExtension)
                }
                Err(SearchError::NotFound { .. }) => Err(SearchError::NotFound { proven: false }),
                Err(e) => Err(e),
            };
        }
    };
    match found {
        Some(f) => certify(a, f, false, false, method),
        None => Err(SearchError::NotFound { proven: true }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor_search::achievable_set;
    use crate::fields::GaloisField;
    use crate::matrix_ring::MatrixIndex;

    #[test]
    fn agrees_with_achievable_sets() {
        let b = Budget::default();
        for p in [2, 3] {
            let f = GaloisField::prime(p).unwrap();
            for k in 2..=4 {
                let set = achievable_set(&f, 2, k, false, &b).unwrap();
                for i in 0..set.size() as u64 {
                    let a = Matrix::from_index(&f, 2, MatrixIndex(i)).unwrap();
                    match general_factor(&a, k, false, &b) {
                        Ok(cert) => {
                            assert!(set.contains(&a));
                            assert!(cert.is_valid());
                        }
                        Err(SearchError::NotFound { proven: true }) => assert!(!set.contains(&a)),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn fact_three_exception() {
        let f = GaloisField::prime(2).unwrap();
        let a = Matrix::parse(&f, "1,1;1,0").unwrap();
        assert_eq!(
            general_factor(&a, 3, false, &Budget::default()),
            Err(SearchError::NotFound { proven: true })
        );
    }

    #[test]
    fn sign_extension_and_commuting() {
        let b = Budget::default();
        let f = GaloisField::prime(2).unwrap();
        // no 3-factorization, but a 4-factorization of -A = A extends to six factors
        let a = Matrix::parse(&f, "1,1;1,0").unwrap();
        let cert = general_factor(&a, 6, false, &b).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.k, 6);
        // the similarity class of E + J over GF(2) has no 4-factorization, so six factors for
        // it are not settled by extension
        let stuck = Matrix::parse(&f, "0,1;1,0").unwrap();
        assert!(matches!(
            general_factor(&stuck, 6, false, &b),
            Ok(_) | Err(SearchError::NotFound { proven: false })
        ));
        // over GF(2) nothing commutes its way to a 3-factorization of E + J
        let j = Matrix::jordan_cell(&f.one(), 2).unwrap();
        assert_eq!(
            general_factor(&j, 3, true, &b),
            Err(SearchError::NotFound { proven: true })
        );
        let f5 = GaloisField::prime(5).unwrap();
        let e = Matrix::identity(&f5, 2).unwrap();
        let cert = general_factor(&e, 3, true, &b).unwrap();
        assert!(cert.commuting && cert.is_valid());
    }
}
