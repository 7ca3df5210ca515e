//! End-to-end checks of the command-line surface.

use std::process::{Command, Output};

fn mexlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mexlab"))
        .args(args)
        .env_remove("MEXLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_examples() {
    let out = mexlab(&["compute", "--which", "sigma-o", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5");

    let out = mexlab(&["compute", "--which", "a", "0..6"]);
    assert_eq!(stdout(&out).trim(), "1 -2 -1 2 1 2 -2");

    let out = mexlab(&["compute", "--which", "sigma", "4"]);
    assert_eq!(stdout(&out).trim(), "9");

    let out = mexlab(&["compute", "--which", "sigma-e", "4", "--format", "json"]);
    assert_eq!(stdout(&out).trim(), r#"["4"]"#);
}

#[test]
fn verify_suites_exit_zero() {
    for suite in ["congruences", "identities", "families", "eta"] {
        let out = mexlab(&["verify", suite, "--order", "400", "--jobs", "2"]);
        assert!(out.status.success(), "{suite}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"), "{suite}");
    }
}

#[test]
fn verify_reports_json_schema() {
    let out = mexlab(&["verify", "congruences", "--order", "200", "--format", "json"]);
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(v["checked"].as_u64().unwrap() > 0);
        assert!(v["counterexample"].is_null());
        assert!(v["claim"].is_string());
    }
}

#[test]
fn density_table() {
    let out = mexlab(&[
        "density", "--series", "G_o", "--mod", "2,4,8", "--X", "100,500", "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "series,modulus,X,delta0");
    assert_eq!(lines.count(), 6);
    assert!(text.contains("G_o,2,100,9/10"));
}

#[test]
fn asym_refuses_undersized_order() {
    let out = mexlab(&["asym", "--which", "sigma-o", "--n", "100", "--order", "50"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--order 100"));
}

#[test]
fn asym_pair_has_ratio_column() {
    let out = mexlab(&["asym", "--which", "pair", "--n", "100", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("n,coefficient,main_term,ratio,odd_over_even"));
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("100,694038162,"), "{row}");
}

#[test]
fn cache_write_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let out = mexlab(&["compute", "--which", "sigma", "0..8", "--cache", cache]);
    assert_eq!(stdout(&out).trim(), "1 2 3 6 9 14 22 32 46");
    let file = dir.path().join("sigma-8.qs");
    let body = std::fs::read_to_string(&file).unwrap();
    assert!(body.starts_with("qseries-cache v1 name=sigma order=8\n"), "{body}");

    // lower-order request must slice the existing file, not rewrite it
    let before = std::fs::metadata(&file).unwrap().modified().unwrap();
    let out = mexlab(&["compute", "--which", "sigma", "0..4", "--cache", cache]);
    assert_eq!(stdout(&out).trim(), "1 2 3 6 9");
    assert_eq!(std::fs::metadata(&file).unwrap().modified().unwrap(), before);
    assert!(!dir.path().join("sigma-4.qs").exists());

    // environment variable form
    let out = Command::new(env!("CARGO_BIN_EXE_mexlab"))
        .args(["compute", "--which", "a", "0..3"])
        .env("MEXLAB_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("a-3.qs").exists());
}

#[test]
fn dissect_slice() {
    let out = mexlab(&[
        "dissect", "--which", "sigma-o", "--order", "20", "-m", "2", "-r", "1",
    ]);
    // sigma_o mex at odd n: all divisible by 4
    let vals: Vec<i64> = stdout(&out)
        .trim()
        .split(' ')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(vals.len(), 10);
    assert!(vals.iter().all(|v| v % 4 == 0));
}

#[test]
fn eta_analysis() {
    let out = mexlab(&["eta", "--k", "2", "--witness-order", "200", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["name"], "B*");
    assert_eq!(first["ok"], true);
    assert_eq!(first["weight"], "1");
}
