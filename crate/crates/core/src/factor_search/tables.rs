//! Oracle-versus-predicate sweeps over (q, k) grids.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::commuting::subalgebra_search;
use super::SearchError;
use crate::budget::Budget;
use crate::fields::{poly::prime_power, GaloisField};
use crate::matrix_ring::Matrix;
use crate::scalar_factor::{decide_balanced, decide_nonpower, oracle_sweep};

/// Confirmed disagreements between the decision tables and exhaustive search.
pub const EXPECTED_DISCREPANCIES: &str = include_str!("../../data/expected_discrepancies.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TableKind {
    /// Balanced factorizations of field elements.
    #[serde(rename = "table1")]
    Table1,
    /// Non-power balanced factorizations of field elements.
    #[serde(rename = "table2-scalar")]
    Table2Scalar,
    /// Commuting balanced factorizations of 2x2 matrices, checked on Jordan cells.
    #[serde(rename = "table2-matrix")]
    Table2Matrix,
}

impl TableKind {
    pub const ALL: [TableKind; 3] = [
        TableKind::Table1,
        TableKind::Table2Scalar,
        TableKind::Table2Matrix,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::Table1 => "table1",
            TableKind::Table2Scalar => "table2-scalar",
            TableKind::Table2Matrix => "table2-matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Discrepancy {
    pub table: TableKind,
    pub q: u64,
    pub k: usize,
    /// An element (or matrix) on which the table is wrong, when the table says yes.
    pub witness: Option<String>,
    pub table_says: bool,
    pub oracle_says: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepCell {
    pub q: u64,
    pub k: usize,
    pub table_says: bool,
    pub oracle_says: bool,
    /// First target without a factorization, if any.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSweep {
    pub table: TableKind,
    pub cells: Vec<SweepCell>,
}

impl TableSweep {
    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        self.cells
            .iter()
            .filter(|c| c.table_says != c.oracle_says)
            .map(|c| Discrepancy {
                table: self.table,
                q: c.q,
                k: c.k,
                witness: c.witness.clone(),
                table_says: c.table_says,
                oracle_says: c.oracle_says,
            })
            .collect()
    }

    /// One row per q, one column per k; a trailing `!` marks a cell where the oracle disagrees.
    pub fn render_grid(&self) -> String {
        let mut qs: Vec<u64> = self.cells.iter().map(|c| c.q).collect();
        qs.dedup();
        let mut ks: Vec<usize> = self.cells.iter().map(|c| c.k).collect();
        ks.sort_unstable();
        ks.dedup();
        let mut out = format!("{:<14}", self.table.as_str());
        for k in &ks {
            let _ = write!(out, "{:>6}", format!("k={k}"));
        }
        out.push('\n');
        for q in qs {
            let _ = write!(out, "{:<14}", format!("GF({q})"));
            for k in &ks {
                let cell = self.cells.iter().find(|c| c.q == q && c.k == *k);
                let text = match cell {
                    None => String::new(),
                    Some(c) => {
                        let word = if c.table_says { "yes" } else { "no" };
                        if c.table_says == c.oracle_says {
                            word.to_string()
                        } else {
                            format!("{word}!")
                        }
                    }
                };
                let _ = write!(out, "{text:>6}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn prime_powers_up_to(max_q: u64) -> Vec<u64> {
    (2..=max_q).filter(|&q| prime_power(q).is_some()).collect()
}

/// All (q, k) with q a prime power in `2..=max_q` and `2 <= k <= max_k`, q-major.
pub fn table_cells(max_q: u64, max_k: usize) -> Vec<(u64, usize)> {
    prime_powers_up_to(max_q)
        .into_iter()
        .flat_map(|q| (2..=max_k).map(move |k| (q, k)))
        .collect()
}

fn field_of(q: u64) -> Result<GaloisField, SearchError> {
    let (p, m) = prime_power(q).ok_or(SearchError::Unsupported(format!(
        "{q} is not a prime power"
    )))?;
    Ok(GaloisField::new(p, m).map_err(crate::matrix_ring::MatrixError::from)?)
}

fn sweep_cell(
    table: TableKind,
    q: u64,
    k: usize,
    budget: &Budget,
) -> Result<SweepCell, SearchError> {
    let field = field_of(q)?;
    let (table_says, witness) = match table {
        TableKind::Table1 | TableKind::Table2Scalar => {
            let sweep = oracle_sweep(&field, k, budget)?;
            let missing = if table == TableKind::Table1 {
                sweep.missing_balanced()
            } else {
                sweep.missing_nonpower()
            };
            let says = if table == TableKind::Table1 {
                decide_balanced(q, k)?
            } else {
                decide_nonpower(q, k)?
            };
            (says, missing.first().map(|&i| field.render_idx(i)))
        }
        TableKind::Table2Matrix => {
            // a 2x2 Jordan cell has centralizer equal to the algebra it generates, so the
            // subalgebra search decides commuting factorizability of each cell exactly
            let mut witness = None;
            for a in field.elements() {
                let cell = Matrix::jordan_cell(&a, 2)?;
                if subalgebra_search(&cell, k, budget)?.is_none() {
                    witness = Some(cell.render());
                    break;
                }
            }
            (decide_nonpower(q, k)?, witness)
        }
    };
    Ok(SweepCell {
        q,
        k,
        table_says,
        oracle_says: witness.is_none(),
        witness,
    })
}

pub fn sweep_table(
    table: TableKind,
    cells: &[(u64, usize)],
    budget: &Budget,
) -> Result<TableSweep, SearchError> {
    let cells = cells
        .par_iter()
        .map(|&(q, k)| sweep_cell(table, q, k, budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableSweep { table, cells })
}

pub fn parse_expected(text: &str) -> Result<Vec<Discrepancy>, serde_json::Error> {
    let mut list: Vec<Discrepancy> = serde_json::from_str(text)?;
    list.sort();
    Ok(list)
}

/// Pretty JSON with sorted keys.
pub fn render_expected(list: &[Discrepancy]) -> String {
    let value = serde_json::to_value(list).expect("plain data serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("plain data serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let b = Budget::default();
        let sweep = sweep_table(TableKind::Table1, &table_cells(4, 4), &b).unwrap();
        assert!(sweep.discrepancies().is_empty());
        let grid = sweep.render_grid();
        assert_eq!(grid.lines().count(), 4);
        assert!(grid.contains("GF(4)"));
    }

    #[test]
    fn gf3_six_factors() {
        let b = Budget::default();
        for table in [TableKind::Table2Scalar, TableKind::Table2Matrix] {
            let sweep = sweep_table(table, &[(3, 6)], &b).unwrap();
            let d = sweep.discrepancies();
            assert_eq!(d.len(), 1);
            assert!(d[0].table_says && !d[0].oracle_says);
        }
    }

    #[test]
    fn expected_file_parses() {
        let list = parse_expected(EXPECTED_DISCREPANCIES).unwrap();
        assert_eq!(parse_expected(&render_expected(&list)).unwrap(), list);
        assert!(list.iter().all(|d| d.table_says != d.oracle_says));
    }
}
