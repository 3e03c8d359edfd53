use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use loopkit::format::{parse_tables, stats_trailer, write_table};
use loopkit_core::{models, structure};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn loopkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn data_files_match_models() {
    let ex = parse_tables(&fs::read_to_string(data("example3_3.tbl")).unwrap()).unwrap();
    assert_eq!(ex[0].table, models::example_3_3());
    let s3 = parse_tables(&fs::read_to_string(data("s3.tbl")).unwrap()).unwrap();
    assert_eq!(s3[0].table, models::symmetric_3());
}

#[test]
fn analyze_json() {
    let o = loopkit(&["analyze", data("example3_3.tbl").to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["flags"]["left_cheban"], true);
    assert_eq!(v["center"], serde_json::json!([0, 7]));
    assert_eq!(v["nilpotency_class"], 2);
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        ["center", "commutant", "flags", "left_nucleus", "middle_nucleus", "nilpotency_class", "nucleus", "right_nucleus"]
    );
}

#[test]
fn analyze_trivial_and_broken() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.tbl");
    fs::write(&one, "1\n0\n").unwrap();
    let o = loopkit(&["analyze", one.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nilpotency_class"], 0);
    assert!(v["flags"].as_object().unwrap().values().all(|f| f == true));

    let broken = dir.path().join("broken.tbl");
    fs::write(&broken, "3\n0 1 2\n1 2 0\n2 2 1\n").unwrap();
    let o = loopkit(&["analyze", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 2"), "{}", stderr(&o));

    let no_identity = dir.path().join("noid.tbl");
    fs::write(&no_identity, "2\n1 0\n1 0\n").unwrap();
    assert_eq!(loopkit(&["analyze", no_identity.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&no_identity, "3\n1 2 0\n2 0 1\n0 1 2\n").unwrap();
    let o = loopkit(&["analyze", no_identity.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("relabeled"));

    assert_eq!(loopkit(&["analyze", "/no/such/file"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let ex = data("example3_3.tbl");
    let ex = ex.to_str().unwrap();
    assert_eq!(loopkit(&["check", ex, "left_cheban"]).status.code(), Some(0));
    assert_eq!(loopkit(&["check", ex, "x = x"]).status.code(), Some(0));
    assert_eq!(loopkit(&["check", ex, "x*(y = z"]).status.code(), Some(2));
    assert_eq!(loopkit(&["check", ex, "no_such_identity"]).status.code(), Some(2));

    let o = loopkit(&["check", data("s3.tbl").to_str().unwrap(), "left_cheban"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("x=1 y=3 z=0"), "{}", stdout(&o));

    let o = loopkit(&["check", data("s3.tbl").to_str().unwrap(), "commutative", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["counterexample"]["assignment"], serde_json::json!({"x": 1, "y": 3}));
}

#[test]
fn check_reports_labels_of_the_input_file() {
    // Z3 with the identity written as 2
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z3.tbl");
    fs::write(&p, "3\n1 2 0\n2 0 1\n0 1 2\n").unwrap();
    let o = loopkit(&["check", p.to_str().unwrap(), "x*x = 1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // first failing x in normalized labels is 1, which the file calls 1
    assert_eq!(v["counterexample"]["assignment"]["x"], 1);
    assert_eq!(v["counterexample"]["rhs"], 2);
}

#[test]
fn enumerate_streams_tables_and_stats() {
    let o = loopkit(&["enumerate", "--order", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(parse_tables(&text).unwrap().len(), 1);
    let stats: serde_json::Value = serde_json::from_str(stats_trailer(&text).unwrap()).unwrap();
    assert_eq!(stats["solutions_found"], 1);
    assert_eq!(stats["complete"], true);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lc8.tbl");
    let o = loopkit(&[
        "enumerate", "--order", "8", "-i", "left_cheban", "--up-to-iso", "--jobs", "2", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let tables: Vec<_> = parse_tables(&fs::read_to_string(&out).unwrap()).unwrap().into_iter().map(|p| p.table).collect();
    assert_eq!(tables.len(), 5);
    assert!(tables.contains(&structure::canonical_form(&models::example_3_3())));

    let o = loopkit(&["enumerate", "--order", "6", "--identity", "cheban", "--up-to-iso", "--count"]);
    let stats: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(stats["tables"], 1);
}

#[test]
fn enumerate_with_predicate_and_inline_identity() {
    let o = loopkit(&["enumerate", "--order", "5", "--first-only", "--predicate", "nonassociative"]);
    let t = parse_tables(&stdout(&o)).unwrap();
    assert_eq!(t.len(), 1);
    assert!(!t[0].table.is_associative());

    let o = loopkit(&["enumerate", "--order", "4", "-i", "x*y = y*x", "--up-to-iso"]);
    let text = stdout(&o);
    let tables = parse_tables(&text).unwrap();
    assert_eq!(tables.len(), 2);
    assert!(text.starts_with(&write_table(&tables[0].table)));

    assert_eq!(loopkit(&["enumerate", "--order", "3", "--predicate", "bogus"]).status.code(), Some(2));
    assert_eq!(loopkit(&["enumerate", "--order", "0"]).status.code(), Some(2));
}

#[test]
fn enumerate_budget_exit_code() {
    let o = loopkit(&["enumerate", "--order", "6", "--max-nodes", "100"]);
    assert_eq!(o.status.code(), Some(3));
    let stats: serde_json::Value = serde_json::from_str(stats_trailer(&stdout(&o)).unwrap()).unwrap();
    assert_eq!(stats["complete"], false);
}

#[test]
fn catalog_lists_names() {
    let o = loopkit(&["catalog", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<_> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap().to_string()).collect();
    for n in ["left_cheban", "right_cheban", "cheban", "moufang", "lcc", "wip", "squares_translation"] {
        assert!(names.iter().any(|m| m == n), "{n}");
    }
}

#[test]
fn verify_paper_small_orders() {
    let o = loopkit(&["verify-paper", "--max-order", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_passed"], true);
    for c in v["claims"].as_array().unwrap() {
        let scope = c["scope"].as_str().unwrap();
        assert!(!scope.contains("≤ 2") && !scope.contains("≤ 6") && !scope.contains("≤ 8"), "{scope}");
    }
    let o = loopkit(&["verify-paper", "--max-order", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("claims passed"));
}

#[test]
fn verify_paper_with_corrupted_example() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tbl");
    // quaternion group: 1 is -1, which is central
    fs::write(&bad, write_table(&models::quaternion())).unwrap();
    let wit = dir.path().join("witnesses");
    let o = loopkit(&[
        "verify-paper", "--max-order", "3", "--example", bad.to_str().unwrap(), "--witness-dir", wit.to_str().unwrap(),
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ex = &v["claims"][0];
    assert_eq!(ex["claim_id"], "ex_3_3");
    assert_eq!(ex["verdict"], "fail");
    let file = ex["witness_file"].as_str().unwrap();
    let w = parse_tables(&fs::read_to_string(file).unwrap()).unwrap();
    assert_eq!(w[0].table, models::quaternion());
}

#[test]
fn verify_paper_budget_skips() {
    let o = loopkit(&["verify-paper", "--max-order", "6", "--max-nodes", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("skipped"));
}
