use std::path::{Path, PathBuf};
use std::process::Command;

use qca::cli::{run, Outcome};

fn context(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("contexts")
        .join(name)
        .display()
        .to_string()
}

fn qca(dir: &Path, args: &[&str]) -> Outcome {
    let cache = dir.display().to_string();
    let mut all = vec!["qca", "--cache-dir", cache.as_str()];
    all.extend_from_slice(args);
    run(all)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn validate_accepts_kronecker_and_prints_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out = qca(dir.path(), &["validate", &context("k2.json"), "--print-matrices"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("E =\n[  1  -2]\n[  0   1]"), "{}", out.stdout);
    assert!(out.stdout.contains("lemma42"));
}

#[test]
fn validate_rejects_bad_contexts() {
    let dir = tempfile::tempdir().unwrap();
    let incompatible = write(
        dir.path(),
        "bad.json",
        r#"{"m":2,"n":2,"d":2,"arrows":[{"from":1,"to":2,"mult":2}],"lambda":[[0,2],[-2,0]],"q0":2}"#,
    );
    let out = qca(dir.path(), &["validate", &incompatible]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("entry (1, 1)"), "{}", out.stdout);

    let cyclic = write(
        dir.path(),
        "cyc.json",
        r#"{"m":2,"n":2,"d":1,"arrows":[{"from":1,"to":2},{"from":2,"to":1}],"lambda":[[0,1],[-1,0]],"q0":2}"#,
    );
    let out = qca(dir.path(), &["validate", &cyclic]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("not acyclic"), "{}", out.stdout);

    let garbled = write(dir.path(), "garbled.json", "{\"m\": 2,\n \"n\": }");
    let out = qca(dir.path(), &["validate", &garbled]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("line 2"), "{}", out.stdout);
}

#[test]
fn catalog_is_persisted_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let out = qca(dir.path(), &["catalog", &context("k2.json"), "--cap", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("(2,2): 34 classes"), "{}", out.stdout);
    assert!(out.stdout.contains("(1,1): 6 classes, 5 indecomposable"), "{}", out.stdout);
    let again = qca(dir.path(), &["catalog", &context("k2.json"), "--cap", "2"]);
    assert!(again.stdout.starts_with("cache hit"), "{}", again.stdout);

    // a fresh process reading the cache sees the same classes
    let ch = qca(dir.path(), &["character", &context("k2.json"), "M:(2,2)#33"]);
    assert_eq!(ch.code, 0, "{}", ch.stderr);
}

#[test]
fn catalog_with_cap_zero_has_only_the_zero_class() {
    let dir = tempfile::tempdir().unwrap();
    let out = qca(dir.path(), &["--json", "catalog", &context("a2.json"), "--cap", "0"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let dims = v["dims"].as_array().unwrap();
    assert_eq!(dims.len(), 1);
    assert_eq!(dims[0]["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn corrupted_cache_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    qca(dir.path(), &["catalog", &context("a2.json")]);
    let file: PathBuf = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&file).unwrap().replacen("\"orbit\":", "\"orbit\":1", 1);
    std::fs::write(&file, text).unwrap();
    let out = qca(dir.path(), &["character", &context("a2.json"), "M:S1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("disagree"), "{}", out.stderr);
}

#[test]
fn character_hall_product_and_integration() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = context("k2.json");
    let out = qca(dir.path(), &["character", &k2, "M:S1"]);
    assert!(out.stdout.ends_with("= X^(-1,0) + X^(-1,2)\n"), "{}", out.stdout);

    let out = qca(dir.path(), &["--json", "hall-mul", &k2, "M:S1", "M:S2"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["product"].as_array().unwrap().len(), 6);

    let closed = qca(dir.path(), &["psi", &k2, "I:1;M:S2;P:2"]);
    let composed = qca(dir.path(), &["psi", &k2, "I:1;M:S2;P:2", "--composed"]);
    assert_eq!(closed.code, 0, "{}", closed.stderr);
    assert_eq!(closed.stdout, composed.stdout);
}

#[test]
fn check_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = qca(dir.path(), &["check", &context("k2.json"), "--suite", "thm-ddlz", "--cap", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("81 passed"), "{}", out.stdout);

    let out = qca(dir.path(), &["check", &context("k2.json"), "--suite", "green", "--cap", "1", "--q0", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("0 failed      0 skipped"), "{}", out.stdout);

    let out = qca(dir.path(), &["check", &context("k2.json"), "--suite", "nope"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unknown suite"));
}

#[test]
fn json_reports_are_reproducible_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run_with = |jobs: &str| {
        qca(dir.path(), &["--json", "--seed", "11", "--jobs", jobs, "check", &context("a2.json"), "--suite", "hall-mul-assoc"])
            .stdout
    };
    assert_eq!(run_with("1"), run_with("3"));
}

#[test]
fn kronecker_example_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = qca(dir.path(), &["--json", "example", "kronecker"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["report"]["failed"], 0);
    assert_eq!(v["q0"], 2);
}

#[test]
fn binary_honours_cache_env_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_qca"))
        .env("QCA_CACHE_DIR", dir.path().join("cache"))
        .args(["catalog", &context("k2.json"), "--out"])
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(report.exists());
    assert_eq!(std::fs::read_dir(dir.path().join("cache")).unwrap().count(), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_qca")).args(["example", "kronecker", "--q0", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q0 = 4"));
}
