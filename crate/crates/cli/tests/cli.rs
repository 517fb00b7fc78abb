//! End-to-end tests of the `madstrap` binary: exit codes, JSON fixtures,
//! reproducibility, and the golden help text.

#![allow(clippy::excessive_precision)] // fixtures keep full oracle digits
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_madstrap"))
        .args(args)
        .env_remove("MADSTRAP_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn help_exits_zero_and_matches_golden() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["params", "sigma", "estimate", "bound", "bahadur", "jointnorm", "pwm", "experiment"] {
        assert!(text.contains(sub), "--help must list `{sub}`");
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/help.txt");
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::write(path, &text).unwrap();
    }
    let want = std::fs::read_to_string(path).unwrap();
    assert_eq!(text, want, "help text drifted; regenerate with UPDATE_GOLDEN=1");
}

#[test]
fn params_fixture() {
    let v = stdout_json(&run(&["params", "--dist", "normal", "--mu", "0", "--sigma", "1"]));
    assert_eq!(v["v"].as_f64().unwrap(), 0.0);
    assert!((v["xi"].as_f64().unwrap() - 0.6744898).abs() < 1e-6);
    assert!((v["fv"].as_f64().unwrap() - 0.3989423).abs() < 1e-6);
}

#[test]
fn sigma_fixture_laplace() {
    let v = stdout_json(&run(&["sigma", "--dist", "laplace", "--mu", "0", "--b", "1"]));
    let m = v["matrix"].as_array().unwrap();
    assert!((m[0][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((m[0][1].as_f64().unwrap()).abs() < 1e-12);
    assert!((m[1][1].as_f64().unwrap() - 2.0).abs() < 1e-10);
}

#[test]
fn bound_fixture() {
    let v = stdout_json(&run(&[
        "bound", "--dist", "normal", "--n", "1000", "--l", "1", "--eps", "0.2", "--which", "median",
    ]));
    assert!((v["bound"].as_f64().unwrap() - 0.21221434624293359).abs() < 1e-9);
    assert_eq!(v["valid"], serde_json::json!(true));
}

#[test]
fn unknown_distribution_exits_two() {
    let out = run(&["params", "--dist", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown distribution family"));
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["params", "--dist", "normal", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_on_inline_data() {
    let v = stdout_json(&run(&["estimate", "--data", "1,2,3,4,5", "--k", "3", "--l", "1"]));
    assert_eq!(v["median"].as_f64().unwrap(), 3.0);
    assert_eq!(v["mad"].as_f64().unwrap(), 1.0);
    assert_eq!(v["modified_mad"].as_f64().unwrap(), 2.0);
    assert_eq!(v["generalized_median"].as_f64().unwrap(), 3.0);
    // degenerate sample: pwm reported as null
    let v = stdout_json(&run(&["estimate", "--data", "5,5,5,5"]));
    assert!(v["pwm"].is_null());
    assert_eq!(v["pwm_degenerate"], serde_json::json!(true));
}

#[test]
fn bahadur_is_seed_reproducible() {
    let args = ["bahadur", "--dist", "normal", "--n", "64", "--seed", "9", "--kind", "mad"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    let est = v["estimate"].as_f64().unwrap();
    let tgt = v["target"].as_f64().unwrap();
    let lin = v["linear_term"].as_f64().unwrap();
    let rem = v["remainder"].as_f64().unwrap();
    assert_eq!(est - tgt - lin - rem, 0.0);
}

#[test]
fn pwm_fixture_exponential() {
    let v = stdout_json(&run(&["pwm", "--dist", "exponential", "--lambda", "1", "--p", "2"]));
    assert!((v["pwm"].as_f64().unwrap() - 0.6724842353708629).abs() < 1e-8);
}

#[test]
fn pwm_variance_flag() {
    let v = stdout_json(&run(&["pwm", "--dist", "normal", "--p", "2", "--variance"]));
    assert!((v["asym_variance"].as_f64().unwrap() - 3.0556738994138729).abs() < 1e-6);
    assert!(v["pwm"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn estimate_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.txt");
    std::fs::write(&path, "1\n2\n3\n\n4\n5\n").unwrap();
    let v = stdout_json(&run(&["estimate", "--input", path.to_str().unwrap()]));
    assert_eq!(v["n"].as_u64().unwrap(), 5);
    assert_eq!(v["median"].as_f64().unwrap(), 3.0);
    // missing file is a runtime failure
    let out = run(&["estimate", "--input", "/nonexistent/data.txt"]);
    assert_eq!(out.status.code(), Some(1));
    // malformed value is a usage error
    std::fs::write(&path, "1\nnot-a-number\n").unwrap();
    let out = run(&["estimate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jointnorm_smoke_and_seed_reproducibility() {
    let args = ["jointnorm", "--dist", "normal", "--n", "64", "--reps", "150", "--seed", "4"];
    let a = run(&args);
    let v = stdout_json(&a);
    assert!(v["per_n"][0]["emp_cov"].is_array());
    assert!(v["all_pass"].is_boolean());
    // bit-reproducible across reruns and worker counts
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let w1 = run(&["jointnorm", "--dist", "normal", "--n", "64", "--reps", "150", "--seed", "4", "--workers", "1"]);
    let w3 = run(&["jointnorm", "--dist", "normal", "--n", "64", "--reps", "150", "--seed", "4", "--workers", "3"]);
    assert_eq!(w1.stdout, w3.stdout);
    assert_eq!(a.stdout, w1.stdout);
}

#[test]
fn experiment_runs_and_is_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("a.csv");
    let csv2 = dir.path().join("b.csv");
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(
        &cfg,
        "[experiment]\nkind = \"joint_normality\"\nn_grid = [48]\nreps = 120\nmaster_seed = 3\n\n[distribution]\nfamily = \"exponential\"\nlambda = 1.0\n\n[output]\npath = 'placeholder.csv'\n",
    )
    .unwrap();
    let out1 = run(&["experiment", "--config", cfg.to_str().unwrap(), "--out", csv1.to_str().unwrap(), "--workers", "1"]);
    assert!(out1.status.success(), "{}", String::from_utf8_lossy(&out1.stderr));
    let out2 = run(&["experiment", "--config", cfg.to_str().unwrap(), "--out", csv2.to_str().unwrap(), "--workers", "3"]);
    assert!(out2.status.success());
    assert_eq!(std::fs::read(&csv1).unwrap(), std::fs::read(&csv2).unwrap());
    // MADSTRAP_WORKERS fallback path
    let csv3 = dir.path().join("c.csv");
    let out3 = Command::new(env!("CARGO_BIN_EXE_madstrap"))
        .args(["experiment", "--config", cfg.to_str().unwrap(), "--out", csv3.to_str().unwrap()])
        .env("MADSTRAP_WORKERS", "2")
        .output()
        .unwrap();
    assert!(out3.status.success());
    assert_eq!(std::fs::read(&csv1).unwrap(), std::fs::read(&csv3).unwrap());
}

#[test]
fn experiment_bad_config_exits_two_and_bad_out_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "[experiment]\nkind = \"joint_normality\"\n").unwrap();
    let out = run(&["experiment", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(
        &cfg,
        "[experiment]\nkind = \"joint_normality\"\nn_grid = [16]\nreps = 2\nmaster_seed = 1\n\n[distribution]\nfamily = \"normal\"\n\n[output]\npath = '/nonexistent-dir/x.csv'\n",
    )
    .unwrap();
    let out = run(&["experiment", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
