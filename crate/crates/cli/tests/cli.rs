//! End-to-end tests running the compiled `ti` binary.

use std::process::{Command, Output};

fn ti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ti"))
        .args(args)
        .env_remove("TI_CACHE_PATH")
        .env_remove("TI_MAX_PARTITION_SIZE")
        .env_remove("TI_THREADS")
        .output()
        .expect("failed to run ti")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn kron_rect_small_value() {
    let out = ti(&["kron", "rect", "-d", "3", "-n", "4", "-k", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "5");
    assert_eq!(v["schema"], 1);
}

#[test]
fn alon_tarsi_of_odd_order_cube_is_zero() {
    let out = ti(&["latin", "at", "-d", "3", "-k", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "0");
}

#[test]
fn eval_unit_is_deterministic() {
    // the fundamental table for d = 3, k = 2 (all columns of [2]^3)
    let table = r#"{"shape":[4,4,4],"rows":[
        [1,1,1,1,2,2,2,2],[1,1,2,2,1,1,2,2],[1,2,1,2,1,2,1,2]]}"#;
    let a = ti(&["delta", "eval-unit", "--table", table, "-n", "4"]);
    let b = ti(&["delta", "eval-unit", "--table", table, "-n", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_json_exits_one_with_diagnostic() {
    let out = ti(&["delta", "eval-unit", "--table", "{not json", "-n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error"), "stderr: {err}");
    assert!(err.contains("table"), "stderr: {err}");
}

#[test]
fn unbalanced_table_exits_one() {
    let table = r#"{"shape":[2,2,2],"rows":[[1,1,2,2],[1,2,1,2],[1,1,1,1]]}"#;
    let out = ti(&["delta", "eval-unit", "--table", table, "-n", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_overrun_exits_two_without_partial_answer() {
    let out = Command::new(env!("CARGO_BIN_EXE_ti"))
        .args(["kron", "rect", "-d", "3", "-n", "4", "-k", "4"])
        .env("TI_MAX_PARTITION_SIZE", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no partial answer on stdout");
}

#[test]
fn large_alon_tarsi_is_gated() {
    let out = ti(&["latin", "at", "-d", "3", "-k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("allow-large"), "stderr: {err}");
}

#[test]
fn cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("coeffs.jsonl");
    let cache_str = cache.to_str().unwrap();
    let first = ti(&["kron", "rect", "-d", "3", "-n", "3", "-k", "4", "--cache", cache_str]);
    assert!(first.status.success());
    let lines = std::fs::read_to_string(&cache).unwrap();
    assert!(lines.lines().count() >= 1, "cache got an entry");
    let second = ti(&["kron", "rect", "-d", "3", "-n", "3", "-k", "4", "--cache", cache_str]);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout, "warm cache output identical");
}

#[test]
fn env_cache_path_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env-coeffs.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_ti"))
        .args(["kron", "rect", "-d", "3", "-n", "2", "-k", "2"])
        .env("TI_CACHE_PATH", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache.exists());
}

#[test]
fn fixtures_list_names_every_table() {
    let out = ti(&["fixtures", "list"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = v["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    for expected in ["delta3", "g3k4", "g5n2", "g7n3", "g9n2"] {
        assert!(names.contains(&expected), "missing {expected}");
    }
}

#[test]
fn fixture_run_reproduces_small_row() {
    let out = ti(&["fixtures", "run", "g3k2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["failures"], 0);
    for cell in v["cells"].as_array().unwrap() {
        assert_eq!(cell["status"], "pass");
    }
}

#[test]
fn out_of_budget_fixture_cells_are_labeled_not_reproduced() {
    let out = Command::new(env!("CARGO_BIN_EXE_ti"))
        .args(["fixtures", "run", "g3k4"])
        .env("TI_MAX_PARTITION_SIZE", "12")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let statuses: Vec<&str> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"pass"));
    assert!(statuses.contains(&"not reproduced"));
    assert!(!statuses.contains(&"fail"));
}

#[test]
fn omega_expansion_prints_terms_with_coefficients() {
    let out = ti(&["hwv", "omega", "-d", "3", "-k", "2", "--expand", "--check-hwv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["highest_weight"], true);
    assert_eq!(header["num_terms"], 4);
    let terms: Vec<serde_json::Value> = lines
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(terms.len(), 4);
    for t in &terms {
        assert!(t["coeff"] == "1" || t["coeff"] == "-1");
        assert_eq!(t["cells"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn csv_output_is_a_flat_projection() {
    let out = ti(&["kron", "rect", "-d", "3", "-n", "2", "-k", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("field,value\n"));
    assert!(text.contains("value,1"));
    assert!(text.contains("schema,1"));
}

#[test]
fn degree_inconclusive_exits_two() {
    // with a tiny budget every candidate degree for n = 5 is out of reach
    let out = Command::new(env!("CARGO_BIN_EXE_ti"))
        .args(["kron", "degree", "-d", "3", "-n", "5"])
        .env("TI_MAX_PARTITION_SIZE", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["status"], "inconclusive");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ti.toml");
    std::fs::write(&cfg, "max_partition_size = 8\n").unwrap();
    // config alone: budget error
    let denied = ti(&["kron", "rect", "-d", "3", "-n", "4", "-k", "4", "--config", cfg.to_str().unwrap()]);
    assert_eq!(denied.status.code(), Some(2));
    // flag overrides the file
    let allowed = ti(&[
        "kron", "rect", "-d", "3", "-n", "4", "-k", "4",
        "--config", cfg.to_str().unwrap(),
        "--max-partition-size", "24",
    ]);
    assert!(allowed.status.success());
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ti.toml");
    std::fs::write(&cfg, "max_partition_sise = 8\n").unwrap();
    let out = ti(&["kron", "rect", "-d", "3", "-n", "2", "-k", "2", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
