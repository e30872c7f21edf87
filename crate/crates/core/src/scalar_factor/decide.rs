//! Closed-form answers to "does every element of GF(q) have a (non-power) balanced
//! factorization into k factors?".

use super::FactorError;
use crate::fields::poly::prime_power;

fn validate(q: u64, k: usize) -> Result<(u64, u32), FactorError> {
    if k < 2 {
        return Err(FactorError::InvalidFactorCount {
            k,
            reason: "at least two factors are required",
        });
    }
    prime_power(q).ok_or(FactorError::NotPrimePower(q))
}

/// Every element of GF(q) has a balanced factorization into `k` factors.
pub fn decide_balanced(q: u64, k: usize) -> Result<bool, FactorError> {
    let (p, _) = validate(q, k)?;
    Ok(match q {
        2 => k.is_multiple_of(2),
        4 => k != 3,
        _ if p == 2 => true,
        3 | 5 => k != 2 && k != 4,
        7 => k != 2 && k != 3,
        _ => k != 2,
    })
}

/// Every element of GF(q) has a balanced factorization into `k` factors that are not all equal.
///
/// Identical to [`decide_matrix`](crate::factor_search::decide_matrix): the same condition
/// characterizes commuting balanced factorizations of n x n matrices for n >= 2.
pub fn decide_nonpower(q: u64, k: usize) -> Result<bool, FactorError> {
    validate(q, k)?;
    Ok(match k {
        3 => q == 5 || q >= 8,
        4 => q == 4 || q >= 7,
        _ => k >= 5 && q >= 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_rows() {
        // rows of the published grid, k = 2, 3, 4, 5, 6
        let grid: [(u64, [bool; 5]); 9] = [
            (2, [true, false, true, false, true]),
            (3, [false, true, false, true, true]),
            (4, [true, false, true, true, true]),
            (5, [false, true, false, true, true]),
            (7, [false, false, true, true, true]),
            (8, [true, true, true, true, true]),
            (16, [true, true, true, true, true]),
            (9, [false, true, true, true, true]),
            (13, [false, true, true, true, true]),
        ];
        for (q, row) in grid {
            for (i, expected) in row.into_iter().enumerate() {
                assert_eq!(
                    decide_balanced(q, i + 2).unwrap(),
                    expected,
                    "q={q} k={}",
                    i + 2
                );
            }
        }
        assert!(!decide_balanced(2, 7).unwrap());
        assert!(decide_balanced(2, 8).unwrap());
        assert!(decide_balanced(3, 9).unwrap());
    }

    #[test]
    fn nonpower_rows() {
        assert!(decide_nonpower(5, 3).unwrap());
        assert!(decide_nonpower(4, 4).unwrap());
        assert!(!decide_nonpower(3, 4).unwrap());
        assert!(!decide_nonpower(3, 3).unwrap());
        assert!(!decide_nonpower(4, 3).unwrap());
        assert!(!decide_nonpower(7, 3).unwrap());
        assert!(decide_nonpower(8, 3).unwrap());
        assert!(!decide_nonpower(5, 4).unwrap());
        assert!(decide_nonpower(7, 4).unwrap());
        assert!(decide_nonpower(3, 5).unwrap());
        for k in 2..20 {
            assert!(!decide_nonpower(2, k).unwrap());
        }
        for q in [3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
            assert!(!decide_nonpower(q, 2).unwrap());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(decide_balanced(6, 3), Err(FactorError::NotPrimePower(6)));
        assert_eq!(decide_nonpower(1, 3), Err(FactorError::NotPrimePower(1)));
        assert!(matches!(
            decide_balanced(5, 1),
            Err(FactorError::InvalidFactorCount { .. })
        ));
    }
}
