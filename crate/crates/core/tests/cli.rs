//! End-to-end runs of the `thicket` binary: exit codes, report contents and
//! byte-identical reruns.

use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn thicket(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_thicket"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("report is JSON")
}

fn write_checkerboard(dir: &Path) -> String {
    let cells: Vec<[i64; 3]> = (0..4)
        .flat_map(|r| (0..4).map(move |c| [r, c, (r + c) % 2]))
        .collect();
    let path = dir.join("checkerboard.json");
    let body = serde_json::json!({ "rows": 4, "cols": 4, "classCount": 2, "cells": cells });
    std::fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn checkerboard_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let grid = write_checkerboard(dir.path());
    let (code, out, _) = thicket(&["thick", "check", "--grid", &grid, "--class", "0", "--mu", "2", "--nu", "2"]);
    assert_eq!(code, 1);
    let r = json(&out);
    assert_eq!(r["status"], "fail");
    let v = &r["report"]["violations"][0]["data"];
    assert_eq!(v["M"], serde_json::json!([0, 2]));
    assert_eq!(v["N"], serde_json::json!([1, 3]));
    assert_eq!(r["config"]["command"]["thick"]["check"]["mu"], 2);
}

#[test]
fn checkerboard_is_three_one_thick() {
    let dir = TempDir::new().unwrap();
    let grid = write_checkerboard(dir.path());
    let (code, _, _) = thicket(&["thick", "check", "--grid", &grid, "--mu", "3", "--nu", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn restrict_and_lift() {
    let dir = TempDir::new().unwrap();
    let grid = write_checkerboard(dir.path());
    let (code, out, _) = thicket(&["thick", "restrict", "--grid", &grid, "--rows", "0,2", "--cols", "1,3"]);
    assert_eq!(code, 0);
    let cells = &json(&out)["report"]["artifacts"]["grid"]["cells"];
    assert!(cells.as_array().unwrap().iter().all(|c| c[2] == 1));
    let (code, out, _) = thicket(&["thick", "lift", "--grid", &grid, "--blocks", "2,1,1,3", "--mu", "2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["report"]["artifacts"]["grid"]["cols"], 7);
}

#[test]
fn constant_oracle_witness_sees_one_color() {
    let (code, out, _) = thicket(&["ramsey", "witness", "--oracle", "constant:1", "--m", "16"]);
    assert_eq!(code, 0);
    let w = &json(&out)["report"]["artifacts"]["witness"];
    assert_eq!(w["colorSet"], serde_json::json!([1]));
}

#[test]
fn extraction_reports_guarantee() {
    let (code, out, _) = thicket(&["ramsey", "extract", "--oracle", "random:3", "--m", "243", "--colors", "3"]);
    assert_eq!(code, 0);
    let ex = &json(&out)["report"]["artifacts"]["extraction"];
    assert!(ex["A"].as_array().unwrap().len() as u64 >= ex["guarantee"].as_u64().unwrap());
}

#[test]
fn search_exit_codes_and_certificate() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("cert.json");
    let cert_s = cert.to_str().unwrap();
    let (code, _, _) = thicket(&["search", "solve", "--m", "4", "--mu", "2", "--nu", "2", "--p", "2", "--emit", cert_s]);
    assert_eq!(code, 0);
    let (code, out, _) = thicket(&["search", "verify", "--grid", cert_s, "--mu", "2", "--nu", "2", "--p", "2"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = thicket(&["search", "solve", "--m", "3", "--mu", "1", "--nu", "1", "--p", "2"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["status"], "unsat");
    let (code, out, _) = thicket(&["search", "solve", "--m", "5", "--mu", "3", "--nu", "3", "--p", "4", "--budget", "3"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["status"], "budget-exceeded");
}

#[test]
fn table_csv_has_fixed_header() {
    let (code, out, _) = thicket(&["search", "table", "--m-max", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next(), Some("m,mu,nu,T,status"));
    assert_eq!(lines.count(), 1 + 4 + 9);
}

#[test]
fn kuratowski_and_split() {
    let dir = TempDir::new().unwrap();
    let fam = dir.path().join("fam.json");
    std::fs::write(&fam, r#"{"universe": 9, "sets": [[0,1,2,3,4,5,6,7,8],[0,1,2,3,4,5,6,7,8]]}"#).unwrap();
    let (code, out, _) = thicket(&["break", "kuratowski", "--family", fam.to_str().unwrap(), "--range", "2"]);
    assert_eq!(code, 0);
    let f = &json(&out)["report"]["artifacts"]["function"];
    assert_eq!(f.as_array().unwrap()[..4], [0, 1, 0, 1]);
    let (code, _, _) = thicket(&["break", "split", "--family", fam.to_str().unwrap(), "--parts", "2"]);
    assert_eq!(code, 0);

    std::fs::write(&fam, r#"{"universe": 3, "sets": [[0],[1],[2]]}"#).unwrap();
    let (code, out, _) = thicket(&["break", "kuratowski", "--family", fam.to_str().unwrap(), "--range", "3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["code"], "selection-exhausted");

    std::fs::write(&fam, r#"{"universe": 3, "sets": [[0,1],[0,2],[1,2]]}"#).unwrap();
    let (code, out, _) = thicket(&["break", "split", "--family", fam.to_str().unwrap(), "--parts", "2"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["code"], "splitter-not-found");
}

#[test]
fn assemble_then_audit_round_trip() {
    let dir = TempDir::new().unwrap();
    let (code, out, _) = thicket(&["corelemma", "assemble", "--m", "5", "--mu", "4", "--columns", "3", "--tau", "2"]);
    assert_eq!(code, 0, "{out}");
    let grid = &json(&out)["report"]["artifacts"]["grid"];
    let path = dir.path().join("g.json");
    std::fs::write(&path, grid.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = thicket(&["corelemma", "audit", "--grid", p, "--m", "5", "--mu", "4", "--columns", "3", "--tau", "2"]);
    assert_eq!(code, 0, "{out}");
    // one class too many: the contract cannot hold for class 2
    let (code, _, _) = thicket(&["corelemma", "audit", "--grid", p, "--m", "5", "--mu", "4", "--columns", "3", "--tau", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn infeasible_square_reports_exhaustion() {
    let (code, out, _) = thicket(&["corelemma", "scenario", "--name", "square", "--tau", "3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["code"], "selection-exhausted");
    let (code, _, _) = thicket(&["corelemma", "scenario", "--name", "square"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(thicket(&["thick", "check", "--mu", "2"]).0, 2);
    assert_eq!(thicket(&["thick", "check", "--grid", "/nonexistent.json", "--mu", "1", "--nu", "1"]).0, 2);
    assert_eq!(thicket(&["ramsey", "witness", "--oracle", "bogus", "--m", "4"]).0, 2);
    assert_eq!(thicket(&["ramsey", "witness", "--oracle", "order3", "--m", "4", "--format", "csv"]).0, 2);
    assert_eq!(thicket(&["nonsense"]).0, 2);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = out.to_str().unwrap();
    let runs: [&[&str]; 4] = [
        &["ramsey", "witness", "--oracle", "random:11", "--m", "81", "--out", o],
        &["corelemma", "scenario", "--name", "unsplitting", "--seed", "5", "--out", o],
        &["resolve", "--points", "300", "--out", o],
        &["resolve", "--mode", "ordertype", "--arity", "3", "--points", "500", "--seed", "2", "--out", o],
    ];
    for args in runs {
        thicket(args);
        let first = std::fs::read(&out).unwrap();
        thicket(args);
        assert_eq!(first, std::fs::read(&out).unwrap(), "{args:?}");
    }
}

#[test]
fn resolve_reports_hits() {
    let (code, out, _) = thicket(&["resolve", "--mode", "ordertype", "--arity", "2", "--points", "5000"]);
    assert_eq!(code, 0);
    let hits = &json(&out)["report"]["artifacts"]["firstHit"];
    assert_eq!(hits.as_array().unwrap().len(), 20);
    let (_, out, _) = thicket(&["resolve", "--points", "2000", "--format", "csv"]);
    let mut lines = out.lines().skip(1);
    assert_eq!(lines.next(), Some("box,class,firstHit"));
    assert_eq!(lines.count(), 80);
}
