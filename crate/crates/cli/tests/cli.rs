//! End-to-end tests of the `ntw` binary: documented examples, exit codes,
//! and the JSON report round trip through `verify`.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TRIDENT: &str = r#"{"terms":[{"exp":[3,0],"coeff":"1"},{"exp":[1,1],"coeff":"1"},{"exp":[0,3],"coeff":"1"}]}"#;

fn write_file(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

fn ntw(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntw"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn curve_weights_both_methods_agree() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "trident.json", TRIDENT);
    let out = ntw(dir.path(), &["curve", "weights", &file, "--method", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(1, 0, 2)"));
    assert!(text.contains("AGREE"));

    let out = ntw(
        dir.path(),
        &["curve", "weights", &file, "--method", "both", "--format", "json"],
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["weights"]["0"], 1);
    assert_eq!(doc["result"]["weights"]["1"], 0);
    assert_eq!(doc["result"]["weights"]["2"], 2);
    assert_eq!(doc["result"]["agreement"], true);
    assert_eq!(doc["manifest"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn surface_weights_cube() {
    let dir = TempDir::new().unwrap();
    let out = ntw(dir.path(), &["surface", "weights", "--family", "prism", "2", "2", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(4, 6, 28, 6, 4)"));
}

#[test]
fn monodromy_thm_a_example() {
    let dir = TempDir::new().unwrap();
    let out = ntw(dir.path(), &["monodromy", "thm-a", "--partition", "288,1", "--r", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("large  true"));
}

#[test]
fn json_reports_verify_and_detect_tampering() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "trident.json", TRIDENT);
    let out = ntw(dir.path(), &["curve", "weights", &file, "--format", "json"]);
    assert!(out.status.success());
    let report = write_file(&dir, "report.json", &stdout(&out));
    let out = ntw(dir.path(), &["verify", &report]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let tampered = stdout(&ntw(dir.path(), &["curve", "weights", &file, "--format", "json"]))
        .replace("\"2\": 2", "\"2\": 3");
    let bad = write_file(&dir, "tampered.json", &tampered);
    let out = ntw(dir.path(), &["verify", &bad]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_invocations_give_identical_reports() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "trident.json", TRIDENT);
    let args = ["curve", "weights", &file, "--format", "json"];
    let a = stdout(&ntw(dir.path(), &args));
    let b = stdout(&ntw(dir.path(), &args));
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    // Usage error.
    let out = ntw(dir.path(), &["curve", "weights", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // Domain error: unreadable input.
    let out = ntw(dir.path(), &["curve", "weights", "missing.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidInput"));
    // Falsified point-count window: a degenerate product of lines whose
    // count deviates far beyond the predicted window.
    let violator = write_file(
        &dir,
        "violator.json",
        r#"{"terms":[{"exp":[0,0],"coeff":"23"},{"exp":[0,3],"coeff":"9"},{"exp":[3,0],"coeff":"15"},{"exp":[3,3],"coeff":"18"}]}"#,
    );
    let out = ntw(dir.path(), &["oracle", "weil", &violator, "--q", "31"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BoundViolated"));
}

#[test]
fn oracle_commands() {
    let dir = TempDir::new().unwrap();
    let file = write_file(&dir, "trident.json", TRIDENT);
    let out = ntw(dir.path(), &["oracle", "nondeg", &file, "--q", "7", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["nondegenerate"], false);

    let out = ntw(dir.path(), &["oracle", "count", &file, "--q", "7", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let n = doc["result"]["count"].as_u64().unwrap();
    assert!((3..=11).contains(&n));

    // Budget cap from the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_ntw"))
        .args(["oracle", "count", &file, "--q", "31", "--ext", "2"])
        .env("NTW_BUDGET", "10")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BudgetExceeded"));
}

#[test]
fn polytope_and_hodge_pipeline() {
    let dir = TempDir::new().unwrap();
    let cube = write_file(&dir, "cube.json", r#"{"family":"prism","sides":[2,2,2]}"#);
    let out = ntw(dir.path(), &["polytope", "info", &cube, "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["normalized_volume"], "48");

    let out = ntw(
        dir.path(),
        &["hodge", "--polytope", &cube, "--m", "2", "--lambda", "1,1,0", "--format", "json"],
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["total"], 48);
}

#[test]
fn conditions_from_ideal_profile() {
    let dir = TempDir::new().unwrap();
    let out = ntw(
        dir.path(),
        &["conditions", "--adjoint-from", "ideal:13000", "--dimx", "2", "--simplified"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("holds  true"));
}
