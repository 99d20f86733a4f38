use std::process::{Command, Output};

use serde_json::Value;

fn rpm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpm")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn odd_length_is_a_usage_error() {
    let out = rpm(&["simulate", "--length", "7", "--time", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));
}

#[test]
fn time_and_events_conflict() {
    let out = rpm(&["simulate", "--length", "4", "--time", "10", "--events", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic() {
    let args = ["simulate", "--length", "8", "--time", "1e5", "--seed", "7"];
    let a = rpm(&args);
    let b = rpm(&args);
    assert_eq!(a.status.code(), Some(0));
    let (a, b) = (json(&a), json(&b));
    assert_eq!(a["result"], b["result"]);
    assert!(a["result"]["summary"]["drift_diamond_hat"]["value"].is_f64());
    assert_eq!(a["manifest"]["seed"], 7);
}

#[test]
fn simulate_log_is_json_lines() {
    let dir = std::env::temp_dir().join(format!("rpm-log-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let log = dir.join("traj.jsonl");
    let out = rpm(&[
        "simulate", "--length", "4", "--time", "50", "--report-every", "5", "--log",
        log.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&log).unwrap();
    assert!(text.lines().count() >= 5);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["time"].is_f64());
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn stationary_integers_l4() {
    let out = rpm(&["stationary", "--length", "4", "--integers"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let r = &v["result"];
    let ints: Vec<&str> = r["integer_form"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(ints.len(), 6);
    assert_eq!(r["integer_sum"], "10");
    assert_eq!(r["observables"]["expected_peaks"], "8/5");
    assert_eq!(r["observables"]["prob_omega_global"], "1/5");
    assert_eq!(r["observables"]["drift_diamond"], "12/5");
    assert_eq!(r["observables"]["drift_global"], "1/5");
}

#[test]
fn tq_lambda_n3() {
    let out = rpm(&["tq", "--n", "3", "--check", "lambda"]);
    assert_eq!(out.status.code(), Some(0));
    let l = &json(&out)["result"]["lambda"];
    assert_eq!(l["alpha"], "9/70");
    assert_eq!(l["beta"], "129/35");
    assert_eq!(l["alpha_passed"], true);
    assert_eq!(l["beta_passed"], true);
}

#[test]
fn tq_bad_n_is_usage() {
    assert_eq!(rpm(&["tq", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn xxz_l6_energy() {
    let out = rpm(&["xxz", "--length", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let e = json(&out)["result"]["energy"].as_f64().unwrap();
    assert!((e + 4.5).abs() < 1e-10, "{e}");
}

#[test]
fn scgf_derivatives_l4() {
    let out = rpm(&["scgf", "--length", "4", "--derivatives"]);
    assert_eq!(out.status.code(), Some(0));
    let d = &json(&out)["result"]["derivatives"];
    assert_eq!(d["d_alpha_exact"], "1/5");
    assert_eq!(d["d_beta_exact"], "12/5");
}

#[test]
fn verify_all_passes_and_shows_l4_row() {
    let out = rpm(&["verify-all", "--lmax", "6", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["result"]["rows"].as_array().unwrap();
    let l4: Vec<&str> = rows
        .iter()
        .filter(|r| r["key"].as_str().unwrap().starts_with("1-stationary/L04/"))
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(&l4[..4], ["8/5", "1/5", "12/5", "1/5"]);
    let keys: Vec<&str> = rows.iter().map(|r| r["key"].as_str().unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn verify_all_sign_flip_fails() {
    let out = rpm(&["verify-all", "--lmax", "4", "--nmax", "2", "--no-xxz", "--inject-sign-flip"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1-stationary/L04/a"));
}

#[test]
fn config_replays_a_run() {
    let dir = std::env::temp_dir().join(format!("rpm-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("first.json");
    let out = rpm(&["--out", first.to_str().unwrap(), "stationary", "--length", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let replay = rpm(&["--config", first.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&first).unwrap()).unwrap();
    assert_eq!(a["result"], json(&replay)["result"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_config_is_resource_error() {
    assert_eq!(rpm(&["--config", "/nonexistent/rpm.json"]).status.code(), Some(3));
}
