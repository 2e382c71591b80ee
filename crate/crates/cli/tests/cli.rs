use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sectorial-means"));
    c.env_remove("SECTORIAL_MEANS_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn entry(m: &Value, part: &str, i: usize, j: usize) -> f64 {
    m[part][i][j].as_f64().unwrap_or(0.0)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn geometric_mean_of_scalars() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n": 1, "re": [[4]]}"#);
    let b = write(dir.path(), "b.json", r#"{"n": 1, "re": [[9]]}"#);
    let out = run(&["mean", "geom", s(&a), s(&b), "--lambda", "0.5"]);
    assert_eq!(code(&out), 0);
    let m = stdout_json(&out);
    assert!((entry(&m, "re", 0, 0) - 6.0).abs() < 1e-12);
}

#[test]
fn single_matrix_resolvent_is_identity_map() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"n": 2, "re": [[2, 0.5], [0.5, 1]], "im": [[0.3, 0.1], [-0.2, 0.4]]}"#;
    let a = write(dir.path(), "a.json", body);
    let out = run(&["mean", "resolvent", s(&a), "--weights", "1", "--mu", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let m = stdout_json(&out);
    let want: Value = serde_json::from_str(body).unwrap();
    for part in ["re", "im"] {
        for i in 0..2 {
            for j in 0..2 {
                assert!((entry(&m, part, i, j) - entry(&want, part, i, j)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn ah_mean_at_infinity_is_arithmetic() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n": 2, "re": [[2, 1], [1, 3]]}"#);
    let b = write(dir.path(), "b.json", r#"{"n": 2, "re": [[4, 0], [0, 1]]}"#);
    let ah = run(&[
        "mean",
        "ah",
        s(&a),
        s(&b),
        "--weights",
        "0.5",
        "0.5",
        "--mu",
        "inf",
    ]);
    let arith = run(&["mean", "arith", s(&a), s(&b)]);
    assert_eq!(code(&ah), 0);
    assert_eq!(stdout_json(&ah), stdout_json(&arith));
    assert!((entry(&stdout_json(&ah), "re", 0, 0) - 3.0).abs() < 1e-15);
}

#[test]
fn unnormalized_weights_warn() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n": 1, "re": [[1]]}"#);
    let b = write(dir.path(), "b.json", r#"{"n": 1, "re": [[3]]}"#);
    let out = run(&["mean", "arith", s(&a), s(&b), "--weights", "1", "3"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalized"));
    assert!((entry(&stdout_json(&out), "re", 0, 0) - 2.5).abs() < 1e-15);
}

#[test]
fn mean_error_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n": 1, "re": [[-0.3]]}"#);
    let ok = write(dir.path(), "ok.json", r#"{"n": 1, "re": [[1]]}"#);
    let bad = write(dir.path(), "bad.json", r#"{"n": 2, "re": [[1]]"#);

    let out = run(&["mean", "harm", s(&a), s(&ok)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not accretive"));
    assert_eq!(code(&run(&["mean", "resolvent", s(&ok), "--mu", "-1"])), 2);
    assert_eq!(
        code(&run(&["mean", "geom", s(&ok), s(&ok), "--lambda", "1.5"])),
        2
    );
    assert_eq!(code(&run(&["mean", "arith", s(&bad)])), 3);
    assert_eq!(code(&run(&["mean", "arith", "/nonexistent/x.json"])), 3);
    assert_eq!(code(&run(&["mean", "cubic", s(&ok)])), 3);
}

#[test]
fn angle_examples() {
    let dir = TempDir::new().unwrap();
    let pd = write(dir.path(), "pd.json", r#"{"n": 2, "re": [[2, 1], [1, 2]]}"#);
    let rot = write(
        dir.path(),
        "rot.json",
        r#"{"n": 2, "re": [[1, 0], [0, 1]], "im": [[1, 0], [0, 1]]}"#,
    );
    let neg = write(
        dir.path(),
        "neg.json",
        r#"{"n": 2, "re": [[1, 0], [0, -1]]}"#,
    );

    let out = run(&["angle", s(&pd)]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["alpha"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["accretivity_margin"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let v = stdout_json(&run(&["angle", s(&rot)]));
    assert!((v["alpha"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);

    assert_eq!(code(&run(&["angle", s(&neg)])), 2);
}

#[test]
fn power_of_diagonal() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n": 2, "re": [[4, 0], [0, 9]]}"#);
    let out = run(&["power", s(&a), "--p", "-0.5"]);
    assert_eq!(code(&out), 0);
    let m = stdout_json(&out);
    assert!((entry(&m, "re", 0, 0) - 0.5).abs() < 1e-14);
    assert!((entry(&m, "re", 1, 1) - 1.0 / 3.0).abs() < 1e-14);

    let neg = write(dir.path(), "neg.json", r#"{"n": 1, "re": [[-4]]}"#);
    assert_eq!(code(&run(&["power", s(&neg), "--p", "0.5"])), 2);
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "pd", "3", "--h", "1", "--k", "4", "--seed", "7"]);
    let b = run(&["gen", "pd", "3", "--h", "1", "--k", "4", "--seed", "7"]);
    let c = run(&["gen", "pd", "3", "--h", "1", "--k", "4", "--seed", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);

    let from_env = bin()
        .args(["gen", "unitary", "2"])
        .env("SECTORIAL_MEANS_SEED", "7")
        .output()
        .unwrap();
    let explicit = run(&["gen", "unitary", "2", "--seed", "7"]);
    assert_eq!(from_env.stdout, explicit.stdout);
}

#[test]
fn gen_then_angle_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = run(&["gen", "sectorial", "4", "--alpha", "0.5", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let p = dir.path().join("s.json");
    std::fs::write(&p, &out.stdout).unwrap();
    let v = stdout_json(&run(&["angle", s(&p)]));
    assert!((v["alpha"].as_f64().unwrap() - 0.5).abs() < 1e-8, "{v}");
}

#[test]
fn gen_rejects_bad_parameters() {
    assert_eq!(code(&run(&["gen", "sectorial", "2", "--alpha", "1.6"])), 2);
    assert_eq!(code(&run(&["gen", "pd", "2", "--h", "4", "--k", "1"])), 2);
    assert_eq!(code(&run(&["gen", "pd", "0"])), 3);
}

#[test]
fn help_and_version_succeed() {
    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(String::from_utf8_lossy(&help.stdout).contains("Exit codes"));
    assert_eq!(code(&run(&["verify", "--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&[])), 3);
}

#[test]
fn list_matches_catalog() {
    let out = run(&["list", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let entries = v.as_array().unwrap();
    assert!(entries.len() >= 34);
    assert!(entries.iter().any(|e| e["id"] == "counterexample.ReR"));
    let text = run(&["list"]);
    assert_eq!(
        String::from_utf8_lossy(&text.stdout).lines().count(),
        entries.len()
    );
}

#[test]
fn verify_counterexample_value() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    let out = run(&[
        "verify",
        "--checks",
        "counterexample.ReR",
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert!((checks[0]["value"].as_f64().unwrap() - 19.0 / 17.0).abs() < 1e-12);
}

#[test]
fn verify_config_errors() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    assert_eq!(
        code(&run(&["verify", "--samples", "0", "--report", s(&report)])),
        3
    );
    assert!(!report.exists());
    assert_eq!(code(&run(&["verify", "--checks", "no.such.check"])), 3);
    assert_eq!(code(&run(&["verify", "--dims", "0"])), 3);

    let cfg = write(dir.path(), "c.json", r#"{"samples": 2, "colour": "red"}"#);
    assert_eq!(code(&run(&["verify", "--config", s(&cfg)])), 3);
    let bad_env = bin()
        .args(["verify"])
        .env("SECTORIAL_MEANS_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(code(&bad_env), 3);
}

#[test]
fn verify_config_file_and_overrides() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("r.csv");
    let cfg = write(
        dir.path(),
        "c.json",
        &format!(
            r#"{{"dims": [2], "samples": 3, "master_seed": 5, "checks": ["GM.commute", "R.homog"],
                "format": "csv", "report_path": {:?}}}"#,
            csv.to_str().unwrap()
        ),
    );
    let out = run(&["verify", "--config", s(&cfg), "--samples", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = body.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("id,"));
    assert!(lines[1].starts_with("GM.commute,"));
    assert!(lines[1].contains(",2,"), "{}", lines[1]);
}

#[test]
fn verify_default_run() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&["verify", "--report", s(&report)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().len() >= 34);
    assert_eq!(v["summary"]["all_required_passed"], true);
    assert!(String::from_utf8_lossy(&out.stdout).contains("checks:"));
}
