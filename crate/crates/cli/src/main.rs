mod document;

use std::path::PathBuf;
use std::process::ExitCode;

use balfact_core::factor_search::{
    decide_matrix, general_factor, parse_expected, prime_powers_up_to, reproduce_fact, sweep_table,
    table_cells, Discrepancy, FactReport, SearchError, TableKind, EXPECTED_DISCREPANCIES, FACT_IDS,
};
use balfact_core::scalar_factor::{
    balanced_factor, decide_balanced, decide_nonpower, rational_factor,
};
use balfact_core::{make_field, Budget, Element, FactorError, Matrix};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use document::{check_document, parse_document, to_sorted_json, CertificateDocument};

/// Exit codes: 0 found / yes / pass, 1 not found / no / fail, 2 usage, 3 budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Budget = 3,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        ExitCode::from(o as u8)
    }
}

#[derive(Parser)]
#[command(
    name = "balfact",
    version,
    about = "Balanced factorizations a = a1*...*ak with a1+...+ak = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a verified balanced factorization of a field element or a matrix.
    Factor(FactorArgs),
    /// Evaluate a decision predicate for (q, k).
    Decide(DecideArgs),
    /// Sweep the decision tables against the exhaustive oracles.
    VerifyTables(VerifyArgs),
    /// Reproduce the small-field matrix experiments.
    Experiments(ExperimentArgs),
    /// Re-verify a certificate document from disk.
    Certify(CertifyArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["target", "matrix"]))]
struct FactorArgs {
    /// Field spec: `Q`, `p`, `q`, `p^m` or `p^m:c0,...,1`.
    #[arg(long)]
    field: String,
    #[arg(long)]
    k: usize,
    /// Scalar target.
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    /// Require at least two distinct factors.
    #[arg(long, conflicts_with = "matrix")]
    nonpower: bool,
    /// Matrix dimension; inferred from --matrix when omitted.
    #[arg(long, requires = "matrix")]
    n: Option<usize>,
    /// Matrix target, rows separated by `;` and entries by `,`.
    #[arg(long)]
    matrix: Option<String>,
    /// Require pairwise commuting factors.
    #[arg(long, requires = "matrix")]
    commuting: bool,
    /// Print a certificate document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    /// Non-power factorizations of field elements.
    #[arg(long, conflicts_with = "matrix")]
    nonpower: bool,
    /// Commuting factorizations of 2x2 matrices.
    #[arg(long)]
    matrix: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableArg {
    All,
    Table1,
    Table2Scalar,
    Table2Matrix,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_q: u64,
    #[arg(long)]
    max_k: usize,
    /// Extend the sweep to this many factors for q <= 5.
    #[arg(long)]
    small_max_k: Option<usize>,
    #[arg(long, value_enum, default_value_t = TableArg::All)]
    table: TableArg,
    /// Expected-discrepancy file; defaults to the one shipped with the library.
    #[arg(long)]
    expected: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// 1 to 7, or `all`.
    #[arg(long)]
    fact: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    eprintln!("error: {msg}");
    Outcome::Usage
}

fn factor_outcome(e: &FactorError) -> Outcome {
    match e {
        FactorError::NotFound { proven: true } | FactorError::Verification(_) => Outcome::Negative,
        FactorError::NotFound { proven: false } | FactorError::Budget(_) => Outcome::Budget,
        _ => Outcome::Usage,
    }
}

fn search_outcome(e: &SearchError) -> Outcome {
    match e {
        SearchError::NotFound { proven: true }
        | SearchError::DecisionNo { .. }
        | SearchError::SearchExhausted { .. }
        | SearchError::Verification(_) => Outcome::Negative,
        SearchError::NotFound { proven: false } | SearchError::Budget(_) => Outcome::Budget,
        SearchError::Factor(f) => factor_outcome(f),
        _ => Outcome::Usage,
    }
}

fn emit(doc: &CertificateDocument, json: bool) {
    if json {
        print!("{}", to_sorted_json(doc));
        return;
    }
    println!("field: {}", doc.field);
    if let Some(n) = doc.n {
        println!("n: {n}");
    }
    println!("target: {}", doc.target);
    println!("k: {}", doc.k);
    if doc.kind == document::Kind::Matrix {
        println!("factors:");
        for f in &doc.factors {
            println!("  {f}");
        }
    } else {
        println!("factors: {}", doc.factors.join(", "));
    }
    println!("nonpower: {}", doc.flags.nonpower);
    println!("commuting: {}", doc.flags.commuting);
    println!("provenance: {}", doc.provenance);
    println!("verified: {}", doc.verified);
}

fn cmd_factor(args: FactorArgs, budget: &Budget) -> Outcome {
    if args.k < 2 {
        return usage(format!("k must be at least 2, got {}", args.k));
    }
    let ctx = match make_field(&args.field) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if let Some(text) = &args.matrix {
        let Some(field) = ctx.galois() else {
            return usage("matrix factorization needs a finite field");
        };
        let a = match Matrix::parse(field, text) {
            Ok(a) => a,
            Err(e) => return usage(e),
        };
        if args.n.is_some_and(|n| n != a.n()) {
            return usage(format!(
                "--n {} does not match a {}x{} matrix",
                args.n.unwrap(),
                a.n(),
                a.n()
            ));
        }
        return match general_factor(&a, args.k, args.commuting, budget) {
            Ok(cert) => {
                emit(&document::from_matrix(&cert), args.json);
                Outcome::Success
            }
            Err(e) => {
                eprintln!("{e}");
                search_outcome(&e)
            }
        };
    }
    let text = args.target.as_deref().expect("clap requires a target");
    let target = match ctx.parse(text) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let result = match target {
        Element::Galois(a) => {
            balanced_factor(&a, args.k, args.nonpower, budget).map(|c| document::from_gf(&c))
        }
        Element::Rational(a) => {
            rational_factor(&a, args.k, args.nonpower).map(|c| document::from_rational(&c))
        }
    };
    match result {
        Ok(doc) => {
            emit(&doc, args.json);
            Outcome::Success
        }
        Err(e) => {
            eprintln!("{e}");
            factor_outcome(&e)
        }
    }
}

fn cmd_decide(args: DecideArgs) -> Outcome {
    let answer = if args.matrix {
        decide_matrix(args.q, args.k).map_err(|e| e.to_string())
    } else if args.nonpower {
        decide_nonpower(args.q, args.k).map_err(|e| e.to_string())
    } else {
        decide_balanced(args.q, args.k).map_err(|e| e.to_string())
    };
    match answer {
        Ok(true) => {
            println!("yes");
            Outcome::Success
        }
        Ok(false) => {
            println!("no");
            Outcome::Negative
        }
        Err(e) => usage(e),
    }
}

#[derive(Serialize)]
struct CellRecord {
    q: u64,
    k: usize,
    table_says: bool,
    oracle_says: bool,
}

#[derive(Serialize)]
struct TableRecord {
    table: TableKind,
    cells: Vec<CellRecord>,
}

#[derive(Serialize)]
struct VerifyReport {
    tables: Vec<TableRecord>,
    discrepancies: Vec<Discrepancy>,
    expected: Vec<Discrepancy>,
    matches_expected: bool,
}

fn cmd_verify_tables(args: VerifyArgs, budget: &Budget) -> Outcome {
    let expected_text = match &args.expected {
        None => EXPECTED_DISCREPANCIES.to_string(),
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage(format!("{}: {e}", path.display())),
        },
    };
    let expected = match parse_expected(&expected_text) {
        Ok(list) => list,
        Err(e) => return usage(format!("expected-discrepancy file: {e}")),
    };
    let tables: Vec<TableKind> = match args.table {
        TableArg::All => TableKind::ALL.to_vec(),
        TableArg::Table1 => vec![TableKind::Table1],
        TableArg::Table2Scalar => vec![TableKind::Table2Scalar],
        TableArg::Table2Matrix => vec![TableKind::Table2Matrix],
    };
    let mut cells = table_cells(args.max_q, args.max_k);
    if let Some(small) = args.small_max_k {
        for q in prime_powers_up_to(args.max_q.min(5)) {
            cells.extend((args.max_k.max(1) + 1..=small).map(|k| (q, k)));
        }
        cells.sort_unstable();
    }

    let mut sweeps = Vec::new();
    for &table in &tables {
        match sweep_table(table, &cells, budget) {
            Ok(s) => sweeps.push(s),
            Err(e) => {
                eprintln!("{}: {e}", table.as_str());
                return search_outcome(&e);
            }
        }
    }
    let mut found: Vec<Discrepancy> = sweeps.iter().flat_map(|s| s.discrepancies()).collect();
    found.sort();
    // only expectations inside the swept range are checked
    let in_scope: Vec<Discrepancy> = expected
        .into_iter()
        .filter(|d| tables.contains(&d.table) && cells.contains(&(d.q, d.k)))
        .collect();
    let matches = found == in_scope;

    if args.json {
        let report = VerifyReport {
            tables: sweeps
                .iter()
                .map(|s| TableRecord {
                    table: s.table,
                    cells: s
                        .cells
                        .iter()
                        .map(|c| CellRecord {
                            q: c.q,
                            k: c.k,
                            table_says: c.table_says,
                            oracle_says: c.oracle_says,
                        })
                        .collect(),
                })
                .collect(),
            discrepancies: found,
            expected: in_scope,
            matches_expected: matches,
        };
        print!("{}", to_sorted_json(&report));
    } else {
        for s in &sweeps {
            println!("{}", s.render_grid());
        }
        if found.is_empty() {
            println!("discrepancies: none");
        } else {
            println!("discrepancies:");
            for d in &found {
                println!(
                    "  {} q={} k={} table={} oracle={} witness={}",
                    d.table.as_str(),
                    d.q,
                    d.k,
                    yes_no(d.table_says),
                    yes_no(d.oracle_says),
                    d.witness.as_deref().unwrap_or("-")
                );
            }
        }
        if matches {
            println!(
                "matches expected discrepancies ({} in range)",
                in_scope.len()
            );
        } else {
            println!("DOES NOT match expected discrepancies:");
            for d in in_scope.iter().filter(|d| !found.contains(d)) {
                println!(
                    "  expected but not found: {} q={} k={}",
                    d.table.as_str(),
                    d.q,
                    d.k
                );
            }
            for d in found.iter().filter(|d| !in_scope.contains(d)) {
                println!(
                    "  found but not expected: {} q={} k={}",
                    d.table.as_str(),
                    d.q,
                    d.k
                );
            }
        }
    }
    if matches {
        Outcome::Success
    } else {
        Outcome::Negative
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct CheckRecord {
    label: String,
    passed: bool,
    expected: Vec<String>,
    found: Vec<String>,
    detail: String,
}

#[derive(Serialize)]
struct FactRecord {
    fact: u8,
    statement: String,
    passed: bool,
    checks: Vec<CheckRecord>,
}

fn fact_record(r: &FactReport) -> FactRecord {
    FactRecord {
        fact: r.fact,
        statement: r.statement.to_string(),
        passed: r.passed(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckRecord {
                label: c.label.clone(),
                passed: c.passed,
                expected: c.expected.clone(),
                found: c.found.clone(),
                detail: c.detail.clone(),
            })
            .collect(),
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_experiments(args: ExperimentArgs, budget: &Budget) -> Outcome {
    let facts: Vec<u8> = if args.fact == "all" {
        FACT_IDS.to_vec()
    } else {
        match args.fact.parse::<u8>() {
            Ok(f) if FACT_IDS.contains(&f) => vec![f],
            _ => return usage(format!("--fact must be 1..7 or all, got {:?}", args.fact)),
        }
    };
    let reports: Vec<FactReport> = facts.iter().map(|&f| reproduce_fact(f, budget)).collect();
    let all_passed = reports.iter().all(FactReport::passed);
    if args.json {
        let records: Vec<FactRecord> = reports.iter().map(fact_record).collect();
        print!("{}", to_sorted_json(&records));
    } else {
        for r in &reports {
            println!(
                "fact {}: {} - {}",
                r.fact,
                pass_fail(r.passed()),
                r.statement
            );
            for c in &r.checks {
                println!("  {}: {} ({})", c.label, pass_fail(c.passed), c.detail);
                if !c.found.is_empty() || !c.expected.is_empty() {
                    println!("    exceptional: {}", join_or_none(&c.found));
                    if c.found != c.expected {
                        println!("    predicted:   {}", join_or_none(&c.expected));
                    }
                }
            }
        }
        let passed = reports.iter().filter(|r| r.passed()).count();
        println!("{passed} of {} facts reproduced", reports.len());
    }
    if all_passed {
        Outcome::Success
    } else {
        Outcome::Negative
    }
}

fn join_or_none(list: &[String]) -> String {
    if list.is_empty() {
        "none".into()
    } else {
        list.join(" | ")
    }
}

fn cmd_certify(args: CertifyArgs) -> Outcome {
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return usage(format!("{}: {e}", args.input.display())),
    };
    let checked = parse_document(&text).and_then(|doc| check_document(&doc));
    match checked {
        Ok(Ok(())) => {
            println!("valid");
            Outcome::Success
        }
        Ok(Err(reason)) => {
            println!("invalid: {reason}");
            Outcome::Negative
        }
        Err(e) => usage(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::from_env();
    let outcome = match cli.command {
        Command::Factor(a) => cmd_factor(a, &budget),
        Command::Decide(a) => cmd_decide(a),
        Command::VerifyTables(a) => cmd_verify_tables(a, &budget),
        Command::Experiments(a) => cmd_experiments(a, &budget),
        Command::Certify(a) => cmd_certify(a),
    };
    outcome.into()
}
