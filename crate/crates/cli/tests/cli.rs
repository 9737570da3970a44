use std::process::{Command, Output};

use qrr_core::catalog::{IdentityInfo, OracleReport, VerifyReport};
use qrr_core::prooftrace::ProofTrace;

fn qrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrr")).args(args).env_remove("QRR_DEFAULT_ORDER").output().expect("run qrr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn expand_geometric_series() {
    let o = qrr(&["expand", "-e", "1/(1-q)", "-n", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "1, 1, 1, 1\n");
}

#[test]
fn expand_rogers_ramanujan_sum() {
    let o = qrr(&["expand", "-e", "sum n=0..inf q^(n^2) / poch(q,q,n)", "-n", "6"]);
    assert_eq!(stdout(&o), "1, 1, 1, 1, 2, 2, 3\n");
}

#[test]
fn expand_json_triples() {
    let o = qrr(&["expand", "-e", "q^(-1) - 1/2", "-n", "1", "--format", "json"]);
    let v: Vec<(i64, String, String)> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, vec![(-1, "1".into(), "1".into()), (0, "-1".into(), "2".into())]);
    let o = qrr(&["expand", "-e", "q^(-1) - 1/2", "-n", "1"]);
    assert_eq!(stdout(&o), "(from q^-1) 1, -1/2, 0\n");
}

#[test]
fn expand_errors_exit_2() {
    let o = qrr(&["expand", "-e", "q^(n^2)"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1, column 4"), "{}", stderr(&o));
    assert!(stderr(&o).contains("not bound"));
    let o = qrr(&["expand", "-e", "sum n=0..inf q^(n^3)"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("degree 3"));
    let o = qrr(&["expand", "-e", "1/(q-q)"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&qrr(&["expand"])), 2);
    assert_eq!(code(&qrr(&["expand", "-e", "q", "-f", "x.qid"])), 2);
}

#[test]
fn expand_identity_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("euler.qid");
    std::fs::write(&good, "# distinct = odd\nprod n=1..inf (1 + q^(n))\n=\n1 / poch(q, q^2, inf)\n").unwrap();
    let o = qrr(&["expand", "-f", good.to_str().unwrap(), "-n", "30"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("equal through q^30\n"));
    let bad = dir.path().join("wrong.qid");
    std::fs::write(&bad, "prod n=1..inf (1 + q^(n))\n=\n1 / poch(q, q^3, inf)\n").unwrap();
    let o = qrr(&["expand", "-f", bad.to_str().unwrap(), "-n", "30", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equal"], false);
    assert_eq!(v["first_mismatch"]["q_exp"], 3);
}

#[test]
fn shipped_files_expand_equal() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/identities");
    for f in ["RR1.qid", "E13.qid", "E17.qid", "GG-1.qid"] {
        let o = qrr(&["expand", "-f", &format!("{dir}/{f}"), "-n", "25"]);
        assert_eq!(code(&o), 0, "{f}: {}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn default_order_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_qrr"))
        .args(["expand", "-e", "1/(1-q)"])
        .env("QRR_DEFAULT_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "1, 1, 1\n");
    let o = qrr(&["expand", "-e", "1/(1-q)"]);
    assert_eq!(stdout(&o).split(", ").count(), 61);
}

#[test]
fn verify_single_and_unknown() {
    let o = qrr(&["verify", "RR1", "--order", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));
    let o = qrr(&["verify", "E99"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown identity"));
    assert_eq!(code(&qrr(&["verify"])), 2);
    assert_eq!(code(&qrr(&["verify", "RR1", "-n", "-1"])), 2);
}

#[test]
fn verify_all_text_and_json_agree() {
    let text = qrr(&["verify", "--all", "--order", "60", "--jobs", "4"]);
    assert_eq!(code(&text), 0, "{}", stdout(&text));
    let json = qrr(&["verify", "--all", "--order", "60", "--format", "json"]);
    assert_eq!(code(&json), 0);
    let reports: Vec<VerifyReport> = serde_json::from_str(&stdout(&json)).unwrap();
    let lines: Vec<String> = stdout(&text).lines().map(String::from).collect();
    assert_eq!(reports.len() + 1, lines.len());
    for (r, line) in reports.iter().zip(&lines) {
        assert!(r.passed());
        assert!(line.starts_with(&r.id), "order differs: {line}");
        assert!(line.contains("PASS"));
    }
    assert!(lines.last().unwrap().starts_with(&format!("{0}/{0} identities pass", reports.len())));
}

#[test]
fn mutated_catalog_fails_and_locates_mismatch() {
    let o = qrr(&["verify", "RR1", "--mutate", "-n", "20"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("first mismatch at q^3"), "{}", stdout(&o));
    let o = qrr(&["verify", "--all", "--mutate", "-n", "20", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let reports: Vec<VerifyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
    assert_eq!(failed, ["RR1"]);
}

#[test]
fn verify_with_samples() {
    let o = qrr(&["verify", "E5", "--sample", "t=-q^2", "-n", "20"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = qrr(&["verify", "E3", "--sample", "a=q^2", "--sample", "t=-q", "-n", "20"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&qrr(&["verify", "E3", "--sample", "a=q"])), 2);
    assert_eq!(code(&qrr(&["verify", "E5", "--sample", "x=q"])), 2);
    assert_eq!(code(&qrr(&["verify", "RR1", "--sample", "t=q"])), 2);
    assert_eq!(code(&qrr(&["verify", "E5", "--sample", "t=q^"])), 2);
}

#[test]
fn out_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qrr(&["verify", "E13", "-n", "30", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("E13"));
    let r: VerifyReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((r.id.as_str(), r.order, r.passed()), ("E13", 30, true));
}

#[test]
fn proof_commands() {
    let o = qrr(&["proof", "1", "-n", "40"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("result: PASS"));
    let o = qrr(&["proof", "3", "-n", "0"]);
    assert_eq!(code(&o), 0);
    let o = qrr(&["proof", "6"]);
    assert_eq!(code(&o), 2);
    let o = qrr(&["proof", "5", "-n", "20", "--format", "json"]);
    let t: ProofTrace = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(t.passed());
    assert_eq!(t.theorem_id, 5);
}

#[test]
fn list_catalog() {
    let o = qrr(&["list"]);
    let text = stdout(&o);
    let e13 = text.lines().find(|l| l.starts_with("E13")).unwrap();
    assert!(e13.contains("Theorem 3"));
    let o = qrr(&["list", "--format", "json"]);
    let infos: Vec<IdentityInfo> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(infos.iter().filter(|i| i.params.is_empty()).count(), 12);
    assert_eq!(infos.len(), 16);
}

#[test]
fn oracle_commands() {
    let o = qrr(&["oracle", "partitions", "--modulus", "5", "--residues", "1,4", "-n", "6"]);
    assert_eq!(stdout(&o), "1, 1, 1, 1, 2, 2, 3\n");
    let o = qrr(&["oracle", "partitions", "--distinct", "--parity", "odd", "-n", "6"]);
    assert_eq!(stdout(&o), "1, 1, 0, 1, 1, 1, 1\n");
    let o = qrr(&["oracle", "check", "E17", "-n", "40", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: Vec<OracleReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.len(), 2);
    assert_eq!(code(&qrr(&["oracle", "check", "nope"])), 2);
}
