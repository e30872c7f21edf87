//! Reproducers for the small-field matrix experiments. Each check records what the statement
//! predicts, what the computation found, and whether they agree; errors become failed checks.

use rayon::prelude::*;

use super::achievable::{achievable_set, AchievableSet};
use super::commuting::{commuting_factor, jordan_not_square};
use super::SearchError;
use crate::budget::Budget;
use crate::fields::GaloisField;
use crate::matrix_ring::{similarity_class, Matrix, MatrixIndex};

pub const FACT_IDS: [u8; 7] = [1, 2, 3, 4, 5, 6, 7];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactCheck {
    pub label: String,
    pub passed: bool,
    /// Matrices the statement says have no factorization.
    pub expected: Vec<String>,
    /// Matrices the computation found without one.
    pub found: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactReport {
    pub fact: u8,
    pub statement: &'static str,
    pub checks: Vec<FactCheck>,
}

impl FactReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

fn statement(fact: u8) -> &'static str {
    match fact {
        1 => "where the commuting criterion holds, every 2x2 matrix has a commuting balanced factorization",
        2 => "-J has no balanced factorization into two factors, since J is not a square",
        3 => "over GF(2), every 2x2 matrix except [[1,1],[1,0]] and [[0,1],[1,1]] has a balanced 3-factorization",
        4 => "over GF(2), every 2x2 matrix outside the similarity class of [[1,0],[1,1]] has a balanced 4-factorization",
        5 => "over GF(2), every 3x3 matrix outside the similarity class of [[1,0,0],[1,1,0],[0,0,1]] has a balanced 3-factorization",
        6 => "over GF(2), every 3x3 matrix has a balanced 4-factorization",
        7 => "over GF(3), GF(4), GF(5) and GF(7), every 2x2 matrix has balanced 3- and 4-factorizations, and appending E, -E adds two factors",
        _ => "unknown experiment",
    }
}

fn rendered(ms: &[Matrix]) -> Vec<String> {
    ms.iter().map(Matrix::render).collect()
}

fn failed(label: String, e: SearchError) -> FactCheck {
    FactCheck {
        label,
        passed: false,
        expected: Vec::new(),
        found: Vec::new(),
        detail: format!("error: {e}"),
    }
}

fn compare(label: String, expected: Vec<Matrix>, set: &AchievableSet) -> FactCheck {
    let missing = set.missing();
    let passed = missing == expected;
    FactCheck {
        label,
        passed,
        detail: if set.is_full() {
            format!("all {} achievable", set.size())
        } else {
            format!("{} of {} achievable", set.count(), set.size())
        },
        expected: rendered(&expected),
        found: rendered(&missing),
    }
}

fn field(q: u64) -> GaloisField {
    let (p, m) = crate::fields::poly::prime_power(q).expect("experiment fields are prime powers");
    GaloisField::new(p, m).expect("small field")
}

fn exceptional_set(
    q: u64,
    n: usize,
    k: usize,
    expected: Result<Vec<Matrix>, SearchError>,
    budget: &Budget,
) -> FactCheck {
    let label = format!("GF({q}), n = {n}, k = {k}");
    let expected = match expected {
        Ok(e) => e,
        Err(e) => return failed(label, e),
    };
    match achievable_set(&field(q), n, k, false, budget) {
        Ok(set) => compare(label, expected, &set),
        Err(e) => failed(label, e),
    }
}

fn class_of(q: u64, text: &str, budget: &Budget) -> Result<Vec<Matrix>, SearchError> {
    let m = Matrix::parse(&field(q), text)?;
    Ok(similarity_class(&m, budget)?.members)
}

fn parse_all(q: u64, texts: &[&str]) -> Result<Vec<Matrix>, SearchError> {
    let mut ms: Vec<Matrix> = texts
        .iter()
        .map(|t| Matrix::parse(&field(q), t))
        .collect::<Result<_, _>>()?;
    ms.sort_by_key(Matrix::index);
    Ok(ms)
}

fn commuting_everywhere(q: u64, k: usize, budget: &Budget) -> FactCheck {
    let label = format!("GF({q}), n = 2, k = {k}, commuting");
    let f = field(q);
    let total = q.pow(4);
    let results: Vec<Result<(), (Matrix, SearchError)>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let a = Matrix::from_index(&f, 2, MatrixIndex(i)).expect("in range");
            match commuting_factor(&a, k, budget) {
                Ok(_) => Ok(()),
                Err(e) => Err((a, e)),
            }
        })
        .collect();
    let failures: Vec<(Matrix, SearchError)> =
        results.into_iter().filter_map(Result::err).collect();
    FactCheck {
        label,
        passed: failures.is_empty(),
        expected: Vec::new(),
        found: failures.iter().map(|(m, _)| m.render()).collect(),
        detail: match failures.first() {
            None => format!("all {total} verified"),
            Some((_, e)) => format!("{} failures, first: {e}", failures.len()),
        },
    }
}

fn minus_j_not_two_factor(q: u64, n: usize, budget: &Budget) -> FactCheck {
    let label = format!("GF({q}), n = {n}, k = 2");
    let f = field(q);
    let run = || -> Result<FactCheck, SearchError> {
        let not_square = jordan_not_square(&f, n, budget)?;
        let minus_j = Matrix::jordan_cell(&f.zero(), n)?.neg();
        let set = achievable_set(&f, n, 2, false, budget)?;
        let reachable = set.contains(&minus_j);
        Ok(FactCheck {
            label: label.clone(),
            passed: not_square && !reachable,
            expected: vec![minus_j.render()],
            found: if reachable {
                Vec::new()
            } else {
                vec![minus_j.render()]
            },
            detail: format!(
                "J is {}a square; {} of {} matrices have 2-factorizations",
                if not_square { "not " } else { "" },
                set.count(),
                set.size()
            ),
        })
    };
    run().unwrap_or_else(|e| failed(label, e))
}

/// Every matrix achievable, and every witness re-verifies after appending `E, -E`.
fn everywhere_with_extension(q: u64, k: usize, commuting: bool, budget: &Budget) -> FactCheck {
    let how = if commuting {
        "commuting search"
    } else if k == 3 {
        "one pass"
    } else {
        "meet in the middle"
    };
    let label = format!("GF({q}), n = 2, k = {k}, {how}");
    let set = match achievable_set(&field(q), 2, k, commuting, budget) {
        Ok(s) => s,
        Err(e) => return failed(label, e),
    };
    let mut check = compare(label, Vec::new(), &set);
    let bad: Vec<String> = (0..set.size() as u64)
        .into_par_iter()
        .filter_map(|i| {
            let ok = match set.certificate(MatrixIndex(i))? {
                Ok(cert) => cert.sign_extended().is_valid(),
                Err(_) => false,
            };
            (!ok).then(|| {
                Matrix::from_index(&set.field, 2, MatrixIndex(i))
                    .unwrap()
                    .render()
            })
        })
        .collect();
    if !bad.is_empty() {
        check.passed = false;
        check.detail = format!(
            "{}; {} certificates failed after extension by E, -E",
            check.detail,
            bad.len()
        );
    } else {
        check.detail = format!(
            "{}; all certificates re-verify with E, -E appended",
            check.detail
        );
    }
    check
}

/// Runs one experiment; failures are carried in the report.
pub fn reproduce_fact(fact: u8, budget: &Budget) -> FactReport {
    let checks = match fact {
        1 => vec![
            commuting_everywhere(5, 3, budget),
            commuting_everywhere(4, 4, budget),
            commuting_everywhere(3, 5, budget),
        ],
        2 => vec![
            minus_j_not_two_factor(2, 2, budget),
            minus_j_not_two_factor(3, 2, budget),
            minus_j_not_two_factor(5, 2, budget),
            minus_j_not_two_factor(2, 3, budget),
            minus_j_not_two_factor(3, 3, budget),
        ],
        3 => vec![exceptional_set(
            2,
            2,
            3,
            parse_all(2, &["1,1;1,0", "0,1;1,1"]),
            budget,
        )],
        4 => vec![exceptional_set(
            2,
            2,
            4,
            class_of(2, "1,0;1,1", budget),
            budget,
        )],
        5 => vec![exceptional_set(
            2,
            3,
            3,
            class_of(2, "1,0,0;1,1,0;0,0,1", budget),
            budget,
        )],
        6 => vec![exceptional_set(2, 3, 4, Ok(Vec::new()), budget)],
        7 => {
            let mut checks = Vec::new();
            for q in [3, 4, 5, 7] {
                checks.push(everywhere_with_extension(q, 3, false, budget));
                let commuting = q == 4 || q == 7;
                checks.push(everywhere_with_extension(q, 4, commuting, budget));
            }
            checks
        }
        _ => Vec::new(),
    };
    FactReport {
        fact,
        statement: statement(fact),
        checks,
    }
}
