use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_jetstrat"));
    c.env_remove("SOURCE_DATE_EPOCH");
    c
}

fn jetstrat(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn repo_file(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", rel]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn stratify_range_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let cfg = repo_file("configs/blowup_r2.json");
    let out = jetstrat(&[
        "stratify",
        "--file",
        &cfg,
        "--k-range",
        "2:20",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,deg_residual,bound_num,bound_den,bound_ok");
    assert_eq!(lines.len(), 1 + 19);
    assert_eq!(lines[1], "2,2,10,2,true");
}

#[test]
fn file_and_builtin_agree() {
    let cfg = repo_file("configs/blowup_r2.json");
    let a = json(&jetstrat(&[
        "--json", "stratify", "--file", &cfg, "--k", "9",
    ]));
    let b = json(&jetstrat(&[
        "--json",
        "stratify",
        "--builtin",
        "blowup_point_R2",
        "--k",
        "9",
    ]));
    assert_eq!(a["report"], b["report"]);
    assert_eq!(a["report"]["stratifications"][0]["residual_beta"][10], "1");
}

#[test]
fn compare_reads_nu_prime_from_file() {
    let cfg = repo_file("configs/blowup_r2.json");
    let out = jetstrat(&["--json", "compare", "--file", &cfg, "--k-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["witness_k"], 8);
}

#[test]
fn two_component_witness() {
    // deg P = 2k - 1 first reaches 2(k+1) - k/6 at k = 18.
    let cfg = repo_file("configs/two_components.json");
    let v = json(&jetstrat(&[
        "--json", "compare", "--file", &cfg, "--k-max", "24",
    ]));
    assert_eq!(v["report"]["witness_k"], 18);
    let v = json(&jetstrat(&[
        "--json", "compare", "--file", &cfg, "--k-max", "17",
    ]));
    assert_eq!(v["report"]["verdict"]["kind"], "INCONCLUSIVE");
}

#[test]
fn invalid_config_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "{\"n\": 2, \"components\": [{\"id\": \"E1\", \"nu\": 1}],\n \"strata\": [{\"J\": [\"E1\"], \"beta\": [\"1\", \"1\", \"1\"], \"origin\": true}]}",
    )
    .unwrap();
    let out = jetstrat(&["validate", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DEGREE_MISMATCH"));

    std::fs::write(
        &path,
        "{\"n\": 2,\n \"components\": [{\"id\": \"E1\", \"nu\": \"one\"}], \"strata\": []}",
    )
    .unwrap();
    let out = jetstrat(&["--json", "validate", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["code"], "PARSE_ERROR");
    assert!(v["error"]["message"]
        .as_str()
        .unwrap()
        .contains("components[0].nu"));
}

#[test]
fn missing_file_exits_2() {
    let out = jetstrat(&["validate", "--file", "/nonexistent/cfg.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_spec_runs_and_fails_on_short_truncation() {
    let out = jetstrat(&["oracle", "--spec", &repo_file("configs/charts.probe.json")]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.json");
    std::fs::write(
        &path,
        r#"{"probes": [
            {"kind": "multiplicity", "map": ["x","x*y"], "equations": ["x"], "nu": [1], "j": [3],
             "arc": {"order": 2, "coeffs": [[0,0,0], [1]]}},
            {"kind": "order", "poly": "y", "arc": {"order": 2, "coeffs": [[0,1], [1]]}}
        ]}"#,
    )
    .unwrap();
    let out = jetstrat(&["--json", "oracle", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(
        v["report"]["probes"][0]["error"]["code"],
        "PRECISION_EXHAUSTED"
    );
    assert_eq!(v["report"]["probes"][1]["status"], "PASS");
    assert_eq!(v["manifest"]["params"]["seed"], 0);
}

#[test]
fn malformed_probe_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"probes": [{"kind": "teleport"}]}"#).unwrap();
    assert_eq!(
        jetstrat(&["oracle", "--spec", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn manifest_timestamp_follows_source_date_epoch() {
    let args = [
        "--json",
        "stratify",
        "--builtin",
        "blowup_point_R3",
        "--k",
        "5",
    ];
    let plain = json(&jetstrat(&args));
    assert_eq!(plain["manifest"]["timestamp"], Value::Null);
    assert_eq!(plain["manifest"]["source"], "blowup_point_R3");
    assert_eq!(plain["manifest"]["params"]["k"], 5);
    let stamped = bin()
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap();
    assert_eq!(json(&stamped)["manifest"]["timestamp"], "1700000000");
}

#[test]
fn reruns_are_byte_identical() {
    let args = [
        "--json",
        "compare",
        "--builtin",
        "blowup_point_Rn(4)",
        "--nu-prime",
        "E1=5",
        "--k-max",
        "30",
    ];
    let a = jetstrat(&args);
    let b = jetstrat(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn quiet_suppresses_text() {
    let out = jetstrat(&[
        "--quiet",
        "stratify",
        "--builtin",
        "blowup_point_R2",
        "--k",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}
