use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn balfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balfact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn factor_examples() {
    let out = balfact(&["factor", "--field", "7", "--k", "4", "--target", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("factors: 3, 2, 5, 4"));

    let out = balfact(&[
        "factor",
        "--field",
        "2",
        "--k",
        "3",
        "--target",
        "1",
        "--nonpower",
    ]);
    assert_eq!(code(&out), 1);

    let out = balfact(&[
        "factor", "--field", "2", "--n", "2", "--k", "3", "--matrix", "1,1;1,0",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn factor_other_contexts() {
    let out = balfact(&["factor", "--field", "Q", "--k", "5", "--target", "-3/2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verified: true"));

    let out = balfact(&["factor", "--field", "3^2", "--k", "3", "--target", "(1 1)"]);
    assert_eq!(code(&out), 0);

    let out = balfact(&[
        "factor",
        "--field",
        "5",
        "--n",
        "2",
        "--k",
        "3",
        "--matrix",
        "1,1;0,1",
        "--commuting",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("commuting: true"));
}

#[test]
fn usage_errors() {
    for args in [
        &["factor", "--field", "6", "--k", "4", "--target", "1"][..],
        &["factor", "--field", "7", "--k", "1", "--target", "1"],
        &["factor", "--field", "7", "--k", "3", "--target", "x"],
        &["factor", "--field", "2", "--k", "3", "--matrix", "1,1;1"],
        &[
            "factor", "--field", "2", "--n", "3", "--k", "3", "--matrix", "1,1;1,0",
        ],
        &["factor", "--field", "Q", "--k", "3", "--matrix", "1,1;1,0"],
        &["factor", "--field", "Q", "--k", "3", "--target", "2"],
        &["factor", "--field", "7", "--k", "3"],
        &["decide", "--q", "6", "--k", "3"],
        &["experiments", "--fact", "8"],
    ] {
        assert_eq!(code(&balfact(args)), 2, "{args:?}");
    }
}

#[test]
fn budget_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_balfact"))
        .args([
            "factor",
            "--field",
            "2",
            "--n",
            "3",
            "--k",
            "3",
            "--matrix",
            "1,0,0;1,1,0;0,0,1",
        ])
        .env("BALFACT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn decide_examples() {
    let out = balfact(&["decide", "--q", "7", "--k", "3"]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "no"));
    let out = balfact(&["decide", "--q", "5", "--k", "3", "--matrix"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "yes"));
    let out = balfact(&["decide", "--q", "3", "--k", "4", "--nonpower"]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "no"));
}

fn certify_text(text: &str) -> Output {
    let file = NamedTempFile::new().unwrap();
    std::fs::write(file.path(), text).unwrap();
    balfact(&["certify", "--in", file.path().to_str().unwrap()])
}

#[test]
fn certificates_round_trip() {
    let cases: [&[&str]; 5] = [
        &[
            "factor", "--field", "7", "--k", "4", "--target", "1", "--json",
        ],
        &[
            "factor", "--field", "Q", "--k", "6", "--target", "5/7", "--json",
        ],
        &[
            "factor", "--field", "3^2", "--k", "3", "--target", "(2 1)", "--json",
        ],
        &[
            "factor", "--field", "2", "--n", "2", "--k", "4", "--matrix", "0,1;1,1", "--json",
        ],
        &[
            "factor",
            "--field",
            "7",
            "--n",
            "2",
            "--k",
            "4",
            "--matrix",
            "1,1;0,1",
            "--commuting",
            "--json",
        ],
    ];
    for args in cases {
        let first = balfact(args);
        assert_eq!(code(&first), 0, "{args:?}");
        let text = stdout(&first);
        // byte-for-byte deterministic
        assert_eq!(stdout(&balfact(args)), text);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["verified"], true);
        assert_eq!(doc["schema_version"], "1");
        let out = certify_text(&text);
        assert_eq!(code(&out), 0, "{text}");
        assert_eq!(stdout(&out).trim(), "valid");
    }
}

#[test]
fn tampered_certificates() {
    let text = stdout(&balfact(&[
        "factor", "--field", "7", "--k", "4", "--target", "1", "--json",
    ]));
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["factors"][0] = "1".into();
    let out = certify_text(&doc.to_string());
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("product mismatch"));

    // swapping two factors keeps the product and the sum
    let mut swapped: serde_json::Value = serde_json::from_str(&text).unwrap();
    swapped["factors"].as_array_mut().unwrap().swap(0, 1);
    assert_eq!(code(&certify_text(&swapped.to_string())), 0);

    let mut short: serde_json::Value = serde_json::from_str(&text).unwrap();
    short["k"] = 5.into();
    assert_eq!(code(&certify_text(&short.to_string())), 1);

    let text = stdout(&balfact(&[
        "factor",
        "--field",
        "5",
        "--n",
        "2",
        "--k",
        "3",
        "--matrix",
        "1,1;0,1",
        "--commuting",
        "--json",
    ]));
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["target"] = "1,0;0,1".into();
    let out = certify_text(&doc.to_string());
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("product mismatch"));
}

#[test]
fn malformed_certificates() {
    let text = stdout(&balfact(&[
        "factor", "--field", "7", "--k", "4", "--target", "1", "--json",
    ]));
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["schema_version"] = "2".into();
    assert_eq!(code(&certify_text(&doc.to_string())), 2);
    assert_eq!(code(&certify_text("{ not json")), 2);
    assert_eq!(
        code(&balfact(&["certify", "--in", "/nonexistent/cert.json"])),
        2
    );
}

#[test]
fn verify_tables_small() {
    let out = balfact(&[
        "verify-tables",
        "--max-q",
        "4",
        "--max-k",
        "4",
        "--table",
        "table1",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("GF(")).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(
        rows[0].split_whitespace().collect::<Vec<_>>(),
        ["GF(2)", "yes", "no", "yes"]
    );
    assert_eq!(
        rows[1].split_whitespace().collect::<Vec<_>>(),
        ["GF(3)", "no", "yes", "no"]
    );
    assert_eq!(
        rows[2].split_whitespace().collect::<Vec<_>>(),
        ["GF(4)", "yes", "no", "yes"]
    );
}

#[test]
fn verify_tables_against_committed_file() {
    let out = balfact(&["verify-tables", "--max-q", "13", "--max-k", "6", "--json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["matches_expected"], true);
    let found = report["discrepancies"].as_array().unwrap();
    assert_eq!(found.len(), 2);
    assert!(found.iter().all(|d| d["q"] == 3 && d["k"] == 6));
    assert!(found.iter().all(|d| d["table"] != "table1"));

    // an empty expectation file turns the same sweep into a failure
    let empty = NamedTempFile::new().unwrap();
    std::fs::write(empty.path(), "[]").unwrap();
    let out = balfact(&[
        "verify-tables",
        "--max-q",
        "3",
        "--max-k",
        "6",
        "--expected",
        empty.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn experiments() {
    let out = balfact(&["experiments", "--fact", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0,1;1,1 | 1,1;1,0"));

    let out = balfact(&["experiments", "--fact", "6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("all 512 achievable"));

    let out = balfact(&["experiments", "--fact", "all", "--json"]);
    assert_eq!(code(&out), 0);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r["passed"] == true));
}
