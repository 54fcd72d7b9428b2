use std::process::{Command, Output};

use multibanana_cli::{CrossCheckDocument, TableDocument, VerifyDocument};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multibanana"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_csv_one_by_one() {
    let o = run(&["compute", "--shape", "1xW", "--w", "1", "--order", "4", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r0,s,value"));
    assert_eq!(lines.next(), Some("0,0,1"));
    assert!(text.lines().any(|l| l == "1,1,8"));
}

#[test]
fn compute_json_schema() {
    let o = run(&["compute", "--shape", "1xW", "--w", "2", "--order", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["shape"], "1xW");
    assert_eq!(v["w"], 2);
    assert_eq!(v["order"], 3);
    assert_eq!(v["variables"], serde_json::json!(["r0", "r1", "s"]));
    assert_eq!(v["coefficients"][0], serde_json::json!({"exponents": [0, 0, 0], "value": "2"}));

    let o = run(&["compute", "--shape", "2x2", "--order", "2", "--format", "json"]);
    let doc: TableDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.shape, "2x2");
    assert_eq!(doc.w, None);
    assert!(!stdout(&o).contains("\"w\""));
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--order", "12"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: VerifyDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc.passed);
    assert_eq!(doc.checks.len(), 3);
}

#[test]
fn crosscheck_passes() {
    let o = run(&["crosscheck", "--shape", "2x2", "--order", "8"]);
    assert!(o.status.success());
    let doc: CrossCheckDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc.passed);
    assert!(doc.first_discrepancy.is_none());

    let o = run(&["crosscheck", "--shape", "1x2", "--order", "6", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("shape,w,order,passed"));
}

#[test]
fn bad_input_is_rejected() {
    for args in [
        &["compute", "--shape", "3x3", "--order", "2"][..],
        &["compute", "--shape", "1xW", "--order", "2"],
        &["compute", "--shape", "1x3", "--w", "2", "--order", "2"],
        &["compute", "--shape", "2x2", "--order", "-1"],
        &["compute", "--shape", "2x2", "--order", "2", "--format", "xml"],
        &["compute", "--order", "2"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert!(!o.status.success(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}
