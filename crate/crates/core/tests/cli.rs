use std::path::Path;
use std::process::{Command, Output};

fn twsec(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twsec"));
    cmd.args(args).env_remove("TWSEC_BUDGET");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("run twsec")
}

fn code(args: &[&str]) -> i32 {
    twsec(args, &[]).status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn region_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for ext in ["csv", "json"] {
        let a = dir.path().join(format!("a.{ext}"));
        let b = dir.path().join(format!("b.{ext}"));
        for p in [&a, &b] {
            let out = twsec(&["region", "--library", "xor", "--secrecy", "joint", "--output", path_str(p)], &[]);
            assert!(out.status.success());
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
    let csv = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(csv, "kind,bound,r1s,r2s\njoint,inner,0,1\njoint,inner,1,0\n");
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("a.json")).unwrap()).unwrap();
    assert_eq!(json["region"]["area"], 0.5);
}

#[test]
fn compare_reports_gaussian_sum_gap() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cmp.json");
    let args = [
        "compare", "--library", "gaussian", "--left", "individual:capacity", "--right", "joint:inner", "--output",
        path_str(&out),
    ];
    assert_eq!(code(&args), 0);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert!((v["max_sum_difference"].as_f64().unwrap() + 2.8327).abs() < 1e-3);
}

#[test]
fn simulate_is_reproducible_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let base = ["simulate", "--library", "mod2", "--n", "2,4", "--r1s", "0.5", "--r2s", "0.5", "--output"];
    let mut args_a = base.to_vec();
    args_a.push(path_str(&a));
    let mut args_b = base.to_vec();
    args_b.extend([path_str(&b), "--threads", "1"]);
    assert_eq!(code(&args_a), 0);
    assert_eq!(code(&args_b), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn budget_exit_and_monte_carlo_fallback() {
    let args = ["simulate", "--library", "mod2", "--n", "4", "--r1s", "0.5", "--r2s", "0.5"];
    assert_eq!(twsec(&args, &[("TWSEC_BUDGET", "1000")]).status.code(), Some(4));
    let mut with_trials = args.to_vec();
    with_trials.extend(["--trials", "500"]);
    let out = twsec(&with_trials, &[("TWSEC_BUDGET", "1000")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("MonteCarlo"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"type\": \"discrete\"}").unwrap();
    assert_eq!(code(&["region", "--channel", path_str(&bad)]), 2);
    assert_eq!(code(&["region"]), 2);
    assert_eq!(code(&["region", "--library", "xor", "--resolution", "1"]), 2);
    assert_eq!(code(&["region", "--library", "bmc", "--bound", "capacity"]), 3);
    assert_eq!(code(&["check-degraded", "--library", "mod2"]), 0);
    assert_eq!(code(&["check-degraded", "--library", "mod2", "--eps1", "0.2", "--eps2", "0.2", "--epsz", "0.05"]), 1);
    assert_eq!(code(&["region", "--channel", concat!(env!("CARGO_MANIFEST_DIR"), "/data/fig6.json"), "--bound", "capacity"]), 0);
}
