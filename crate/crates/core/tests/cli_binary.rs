//! The installed binary and its exit-code contract.

use std::process::Command;

fn pforge(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pforge"))
        .args(args)
        .env_remove("PFORGE_CAP_N")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into(),
        String::from_utf8_lossy(&out.stderr).into(),
    )
}

fn witness(name: &str) -> String {
    format!(
        "{}/fixtures/witnesses/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    )
}

#[test]
fn build_cn_levels() {
    let (code, out, _) = pforge(&["build-cn", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["data"]["cn"],
        serde_json::json!([["x1", "x2"], ["-a1*x2", "-x1"]])
    );
    assert_eq!(pforge(&["build-cn", "2"]).0, 0);
    assert_eq!(pforge(&["build-cn", "0"]).0, 1);
    assert_eq!(pforge(&["build-cn", "2", "--params", "a,b"]).0, 0);
    assert_eq!(pforge(&["build-cn", "2", "--params", "a"]).0, 1);
    assert_eq!(pforge(&["build-cn", "1", "--params", "x1"]).0, 1);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(pforge(&["--help"]).0, 0);
    assert_eq!(pforge(&["--version"]).0, 0);
    assert_eq!(pforge(&[]).0, 1);
    assert_eq!(pforge(&["frobnicate"]).0, 1);
}

#[test]
fn verify_kinds() {
    let (code, out, _) = pforge(&["verify", "theta", "--n", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["data"]["theta"], v["data"]["closed_form"]);
    assert_eq!(
        pforge(&["verify", "rank1", "--n", "3", "--trials", "20"]).0,
        0
    );
    assert_eq!(pforge(&["verify", "nrd", "--p", "2"]).0, 1);
    assert_eq!(pforge(&["verify", "interchange", "--dim", "3"]).0, 1);
    assert_eq!(pforge(&["verify", "interchange", "--dim", "8"]).0, 1);
    assert_eq!(pforge(&["verify", "theta", "--n", "3"]).0, 1);
}

#[test]
fn chain_cases() {
    let cases = [
        ("1,2", "identity_a1_a2", 1),
        ("1,3", "twist_a1_a3", 3),
        ("2,3", "twist_a2_a3", 5),
    ];
    for (step, file, len) in cases {
        let (code, out, err) = pforge(&[
            "chain",
            "--presentation",
            "a1,a2,a3",
            "--step",
            step,
            "--witness",
            &witness(file),
        ]);
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["data"]["moves"].as_array().unwrap().len(), len);
    }
    let bad = [
        "chain",
        "--presentation",
        "a1,a2,a3",
        "--step",
        "1,2",
        "--witness",
    ];
    assert_eq!(
        pforge(&[&bad[..], &[&witness("broken_twist_a1_a2")]].concat()).0,
        2
    );
    assert_eq!(
        pforge(&[&bad[..], &[&witness("twist_a1_a3")]].concat()).0,
        1
    );
    assert_eq!(pforge(&[&bad[..], &["/nonexistent.json"]].concat()).0, 1);
}

#[test]
fn reproduce_and_determinism() {
    let (code, a, _) = pforge(&["reproduce", "--suite", "census"]);
    assert_eq!(code, 0);
    assert_eq!(a, pforge(&["reproduce", "--suite", "census"]).1);
    assert_eq!(pforge(&["reproduce", "--suite", "unknown"]).0, 1);
}

#[test]
fn env_cap_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_pforge"))
        .args(["build-cn", "2"])
        .env("PFORGE_CAP_N", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_pforge"))
        .args(["build-cn", "2"])
        .env("PFORGE_CAP_N", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("pforge-out-{}.json", std::process::id()));
    let (code, out, _) = pforge(&[
        "verify",
        "census",
        "--p",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    std::fs::remove_file(path).ok();
}
