//! End-to-end tests of the potalg binary.

use std::process::Command;

fn potalg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_potalg"))
}

#[test]
fn series_plain_and_json() {
    let out = potalg()
        .args(["series", "--builtin", "kgen:2:4", "--field", "q", "--degree", "8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1, 2, 4, 6, 9, 12, 16, 20, 25"), "{text}");

    let out = potalg()
        .args([
            "series", "--builtin", "kgen:2:4", "--field", "q", "--degree", "6", "--format", "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "graded-dims");
    assert_eq!(v["n"], 2);
    assert_eq!(v["k"], 4);
    assert_eq!(v["D"], 6);
    assert_eq!(v["coeffs"][4], 9);
}

#[test]
fn inline_and_file_sources_agree() {
    let dir = std::env::temp_dir().join(format!("potalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pot.txt");
    std::fs::write(&path, "# the (2,4) example\n(x1^2*x2^2)~\n").unwrap();

    let from_file = potalg()
        .args(["series", "--format", "json"])
        .arg("--file")
        .arg(&path)
        .output()
        .unwrap();
    let inline = potalg()
        .args(["series", "--inline", "(x1^2*x2^2)~", "--format", "json"])
        .output()
        .unwrap();
    assert!(from_file.status.success() && inline.status.success());
    assert_eq!(from_file.stdout, inline.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bound_csv_has_slack_column() {
    let out = potalg()
        .args(["bound", "2", "4", "6", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,coefficient,bound_coefficient,slack"));
    assert_eq!(lines.next(), Some("0,1,1,0"));
    assert_eq!(lines.next(), Some("1,2,3,-1"));
}

#[test]
fn classify_and_examples() {
    let out = potalg().args(["classify", "2", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("excluded-case-2-3"));

    let out = potalg().args(["examples", "3", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // the printed text must parse back to the same potential
    let parsed = potalg()
        .args(["series", "--field", "q", "--degree", "5", "--inline", text.trim()])
        .output()
        .unwrap();
    assert!(parsed.status.success());
    let series = String::from_utf8(parsed.stdout).unwrap();
    assert!(series.contains("1, 3, 6, 10, 15, 21"), "{series}");
}

#[test]
fn minimal_exit_codes() {
    let ok = potalg()
        .args(["minimal", "--builtin", "kgen:2:4", "--degree", "8"])
        .output()
        .unwrap();
    assert!(ok.status.success());

    // the cyclic word x1 x2^3 misses the minimal series: exit code 1 and a
    // machine-readable failure record on stderr
    let bad = potalg()
        .args(["minimal", "--inline", "(x1*x2^3)~", "--degree", "6"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let record: serde_json::Value =
        serde_json::from_slice(&bad.stderr).expect("stderr is a JSON failure record");
    assert_eq!(record["command"], "minimal");
}

#[test]
fn errors_exit_with_code_2() {
    let out = potalg()
        .args(["series", "--inline", "x1*x2 + $"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let record: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(record["command"], "potalg");

    let out = potalg()
        .args(["series", "--builtin", "kgen:2:3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn random_requires_seed_and_is_reproducible() {
    let missing = potalg()
        .args(["series", "--random", "2:4:4"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let a = potalg()
        .args(["series", "--random", "2:4:4", "--seed", "7", "--format", "json"])
        .output()
        .unwrap();
    let b = potalg()
        .args(["series", "--random", "2:4:4", "--seed", "7", "--format", "json"])
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generic_report_structure() {
    let out = potalg()
        .args([
            "generic", "2", "4", "4", "--trials", "3", "--seed", "5", "--degree", "6", "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["trials"], 3);
    assert_eq!(v["params"]["modulus"], 65521);
    assert_eq!(v["per_trial"].as_array().unwrap().len(), 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("potalg-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = potalg()
        .args(["bound", "2", "4", "5", "--format", "json"])
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["gsv_bound"]["kind"], "gsv-bound");
    std::fs::remove_dir_all(&dir).ok();
}
