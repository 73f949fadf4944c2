use std::process::Command;

use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pairorbits"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn nlambda_examples() {
    assert_eq!(bin(&["nlambda", "3,1"]).1, "q^3 + 5q^2 + 7q + 4\n");
    assert_eq!(bin(&["nlambda", "1,1,1,1,1"]).1, "q + 3\n");
    assert_eq!(bin(&["nlambda", ""]).1, "1\n");
    let latex = bin(&["nlambda", "4^2,1", "--latex"]).1;
    assert!(latex.contains("$ (4, 4, 1) $ & $ q^4 + 6q^3 + 13q^2 + 19q + 16 $\\\\"));
}

#[test]
fn table_twelve_json() {
    let (code, out, _) = bin(&["table", "12", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 77);
    for r in rows {
        let lam: pairorbits::Partition = serde_json::from_value(r["partition"].clone()).unwrap();
        let n: pairorbits::QPoly = serde_json::from_value(r["n_lambda"].clone()).unwrap();
        assert!(n.is_monic() && n.degree() == Some(lam.largest() as usize), "{lam}");
    }
}

#[test]
fn table_one_and_five() {
    assert_eq!(bin(&["table", "1"]).1, "(1)  q + 2\n");
    let (_, out, _) = bin(&["table", "5"]);
    assert_eq!(out.lines().count(), 7);
    assert!(out.contains("(3, 2)           q^3 + 5q^2 + 10q + 7"));
}

#[test]
fn census_examples() {
    let (code, out, _) = bin(&["census", "5,4,4,2,1", "--max", "1:4,0:1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 23 + 1);
    assert!(out.ends_with("total: 4q^3 + 6q^2 + 6q + 2\n"));
    let (_, out, _) = bin(&["census", "2", "--max", "1:2", "--csv"]);
    assert_eq!(out, "cardinality,orbits\n1,q\nq,q - 1\n");
    let (code, _, err) = bin(&["census", "2", "--max", "0:1"]);
    assert_eq!(code, 1);
    assert!(err.contains("off the rows"));
}

#[test]
fn refined_and_limits() {
    let (code, out, _) = bin(&["refined", "2,1", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    assert!(out.ends_with(",q^2 + 5q + 5\n"));
    let (code, _, err) = bin(&["refined", "3,3,3"]);
    assert_eq!(code, 1);
    assert!(err.contains("--force"));
}

#[test]
fn quiver_verify_conjecture() {
    assert_eq!(bin(&["quiver", "1"]).1, "q^2 + 2q\n");
    assert_eq!(bin(&["quiver", "2", "--at", "2"]).1, "q^4 + 2q^3 + 4q^2 + 2q\nat q = 2: 52\n");
    let (code, out, _) = bin(&["verify", "2,1", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("pair orbit count: expected 19, got 19"));
    let (code, out, _) = bin(&["verify", "2,1", "3", "--full-endos", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["pass"], true, "{c}");
        assert!(c.get("name").is_some() && c.get("expected").is_some() && c.get("actual").is_some());
    }
    let (code, out, _) = bin(&["conjecture", "8"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("no negative coefficients"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(bin(&[]).0, 1);
    assert_eq!(bin(&["table"]).0, 1);
    assert_eq!(bin(&["nlambda", "0,1"]).0, 1);
    assert_eq!(bin(&["verify", "1", "6"]).0, 1);
    assert_eq!(bin(&["--version"]).0, 0);
}
