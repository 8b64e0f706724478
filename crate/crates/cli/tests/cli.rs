use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn maximin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maximin")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = maximin(&full);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), value)
}

#[test]
fn mms_reports_value_and_witness() {
    let (code, v) = json(&["mms", "--items", "1,3,5,6,9", "--pair", "1/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 7);
    assert_eq!(v["witness"]["parts"], 3);
    let sums: Vec<u64> = serde_json::from_value(v["part_sums"].clone()).unwrap();
    assert_eq!(sums.iter().sum::<u64>(), 24);
    assert_eq!(*sums.iter().min().unwrap(), 7);
}

#[test]
fn mms_text_output() {
    let out = maximin(&["mms", "--items", "1 3 5 6 9", "--pair", "2/5"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains('4'));
}

#[test]
fn mms_reads_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("items.json");
    fs::write(&path, "[1, 3, 5, 6, 9]").unwrap();
    let (code, v) = json(&["mms", "--instance", path.to_str().unwrap(), "--pair", "3/5"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 9);
}

#[test]
fn dominance_exit_codes() {
    let (code, v) = json(&["dominates", "2", "3", "4", "7"]);
    assert_eq!((code, &v["dominates"]), (0, &Value::Bool(true)));
    let (code, v) = json(&["dominates", "2", "3", "5", "7"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["mms_p"], 4);
    assert_eq!(v["witness"]["mms_p_prime"], 5);
}

#[test]
fn pairs_with_trace() {
    let (code, v) = json(&["pairs", "--entitlement", "0.74", "--items-count", "7", "--trace"]);
    assert_eq!(code, 0);
    assert_eq!(v["pairs"], serde_json::json!([{"l": 2, "d": 3}, {"l": 5, "d": 7}]));
    assert_eq!(v["trace"].as_array().unwrap().len(), 5);
    let text = String::from_utf8(maximin(&["pairs", "--entitlement", "0.74", "--items-count", "7", "--trace"]).stdout).unwrap();
    assert!(text.contains("3/5 is filtered out by 5/7 (with q=1, r=2)"));
}

#[test]
fn audit_verdicts() {
    let (code, _) = json(&["audit", "--items", "40,60", "--entitlements", "0.6,0.2,0.2", "--allocation", ";0;1"]);
    assert_eq!(code, 1);
    let (code, v) = json(&[
        "audit", "--items", "40,60", "--entitlements", "0.6,0.2,0.2", "--allocation", ";0;1", "--criteria", "wmms",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["all_ok"], true);
    let (code, _) = json(&["audit", "--items", "1,3,5,6,9", "--entitlements", "1", "--allocation", "0,1,2,3,4"]);
    assert_eq!(code, 0);
}

#[test]
fn audit_reads_allocation_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alloc.json");
    fs::write(&path, "[[0, 3], [1, 2, 4]]").unwrap();
    let (_, v) = json(&[
        "audit", "--items", "1,3,5,6,9", "--entitlements", "2/5,3/5", "--allocation-file", path.to_str().unwrap(),
        "--criteria", "omms",
    ]);
    assert_eq!(v["report"]["agents"][0]["omms_ok"], true);
    assert_eq!(v["report"]["agents"][1]["omms_ok"], true);
}

#[test]
fn usage_and_resource_errors() {
    assert_eq!(maximin(&["mms", "--items", "1,x", "--pair", "1/3"]).status.code(), Some(2));
    assert_eq!(maximin(&["mms", "--items", "1,2", "--pair", "4/3"]).status.code(), Some(2));
    assert_eq!(maximin(&["dominates", "1", "2"]).status.code(), Some(2));
    assert_eq!(
        maximin(&["audit", "--items", "1,2", "--entitlements", "1/2,1/3", "--allocation", "0;1"]).status.code(),
        Some(2)
    );
    assert_eq!(maximin(&["audit", "--items", "1,2", "--entitlements", "1/2,1/2", "--allocation", "0;0"]).status.code(), Some(2));
    let many = vec!["1"; 17].join(",");
    assert_eq!(maximin(&["mms", "--items", &many, "--pair", "1/3"]).status.code(), Some(3));
    assert_eq!(maximin(&["mms", "--items", &many, "--pair", "1/3", "--unbounded"]).status.code(), Some(0));
}

#[test]
fn scan_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let out = maximin(&["scan", "--values", "40,60", "--grid-items", "2", "--output", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("agents,instance,entitlements,omms,wmms,bmms"));
    assert!(lines.count() > 0);

    let report = dir.path().join("scan.json");
    maximin(&["scan", "--values", "40,60", "--grid-items", "2", "--output", report.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["summary"]["wmms_strictly_stronger"].as_u64().unwrap() > 0);
    assert!(v["summary"]["omms_strictly_stronger"].as_u64().unwrap() > 0);
}

#[test]
fn empty_scan() {
    let (code, v) = json(&["scan", "--grid-items", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["rows"], 0);
}

#[test]
fn record_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("run.json");
    let rec_str = rec.to_str().unwrap();
    let out = maximin(&["--record", rec_str, "mms", "--items", "1,3,5,6,9", "--pair", "1/2"]);
    assert!(out.status.success());
    let record: Value = serde_json::from_str(&fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(record["outputs"]["value"], 12);
    assert_eq!(record["exit_code"], 0);
    assert_eq!(maximin(&["replay", rec_str]).status.code(), Some(0));

    let mut tampered = record.clone();
    tampered["outputs"]["value"] = 11.into();
    fs::write(&rec, tampered.to_string()).unwrap();
    assert_eq!(maximin(&["replay", rec_str]).status.code(), Some(1));
}
