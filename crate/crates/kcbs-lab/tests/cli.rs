//! Contract tests for the command-line interface: exit codes, format
//! schemas, determinism, and input validation.

use std::process::{Command, Output};

fn kcbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kcbs-lab"))
        .args(args)
        .env_remove("KCBS_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("reports are utf-8")
}

fn json(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(output)).expect("valid json report")
}

#[test]
fn pentagram_default_run_succeeds() {
    let out = kcbs(&["pentagram"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("quantum_sum   = 0.5278640"));
    assert!(text.contains("classical_min = 1"));
    assert!(text.contains("admissible assignments: 11"));
    assert!(text.contains("verdict: VIOLATED"));
}

#[test]
fn pentagram_off_angle_fails_verification_with_exit_3() {
    let out = kcbs(&["pentagram", "--zeta-pent", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout_str(&out);
    assert!(text.contains("FAIL"));
    // The report still lists the offending moduli.
    assert!(text.contains("(1,2)"));
}

#[test]
fn pentagram_rejects_bad_angle_with_exit_2() {
    let out = kcbs(&["pentagram", "--zeta-pent", "1.6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zeta_pent"));
}

#[test]
fn pentagram_json_schema() {
    let out = kcbs(&["pentagram", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "pentagram");
    assert!((v["inputs"]["zeta_pent"].as_f64().unwrap() - 0.6283185307179586).abs() < 1e-15);
    let results = &v["results"];
    assert!((results["quantum_sum"].as_f64().unwrap() - 0.52786).abs() < 1e-5);
    assert_eq!(results["classical_bound"], 1);
    assert_eq!(results["admissible_count"], 11);
    assert_eq!(results["verdict"], "VIOLATED");
    assert_eq!(results["orthogonality_pass"], true);
    assert_eq!(results["vectors"].as_array().unwrap().len(), 5);
    assert_eq!(results["adjacency_moduli"].as_array().unwrap().len(), 5);
}

#[test]
fn context_reports_three_matching_distributions() {
    let out = kcbs(&["context", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let results = &json(&out)["results"];
    for route in ["qm", "closed_form", "quadrature"] {
        assert!((results[route]["p_mp"].as_f64().unwrap() - 0.4472136).abs() < 1e-6);
        assert_eq!(results[route]["p_mm"].as_f64().unwrap(), 0.0);
    }
    assert!(results["max_abs_discrepancy_closed_form"].as_f64().unwrap() < 1e-12);
    assert!(results["max_abs_discrepancy_quadrature"].as_f64().unwrap() < 1e-7);
}

#[test]
fn context_echoes_angles_to_seven_digits() {
    let out = kcbs(&["context"]);
    let text = stdout_str(&out);
    assert!(text.contains("zeta_canon = 0.8382831"));
    assert!(text.contains("theta      = 2.3033095"));
}

#[test]
fn context_out_of_domain_exits_2_and_cites_the_bound() {
    let out = kcbs(&["context", "--theta", "3.2"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("pi/2 + zeta_canon"));
}

#[test]
fn context_distribution_is_rho_independent() {
    let base = json(&kcbs(&["context", "--format", "json"]));
    let phased = json(&kcbs(&["context", "--rho", "2.5", "--format", "json"]));
    for outcome in ["p_mm", "p_mp", "p_pm", "p_pp"] {
        let a = base["results"]["qm"][outcome].as_f64().unwrap();
        let b = phased["results"]["qm"][outcome].as_f64().unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn sweep_csv_contract() {
    let out = kcbs(&["sweep", "--grid", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "zeta,theta,qm_mm,qm_mp,qm_pm,qm_pp,hv_mm,hv_mp,hv_pm,hv_pp,max_abs_discrepancy"
    );
    // 4 grid rows plus the summary row.
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with(",,,,,,,,,,"));
    for row in &lines[1..5] {
        assert_eq!(row.split(',').count(), 11);
    }
}

#[test]
fn sweep_json_discrepancy_is_tiny() {
    let out = kcbs(&["sweep", "--grid", "20", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["command"], "sweep");
    assert_eq!(v["inputs"]["grid"], 20);
    assert!(v["results"]["max_abs_discrepancy"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 400);
}

#[test]
fn sweep_rejects_degenerate_grid() {
    let out = kcbs(&["sweep", "--grid", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_is_only_for_sweep() {
    for command in ["pentagram", "context"] {
        let out = kcbs(&[command, "--format", "csv"]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
    }
}

#[test]
fn simulate_is_byte_identical_across_runs_and_thread_caps() {
    let args = ["simulate", "--samples", "200000", "--seed", "7"];
    let first = kcbs(&args);
    let second = kcbs(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let capped = Command::new(env!("CARGO_BIN_EXE_kcbs-lab"))
        .args(args)
        .env("KCBS_LAB_THREADS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(capped.status.code(), Some(0));
    // The chunk layout depends on the sample count only, so a thread cap
    // changes scheduling but not a single byte of the counts.
    let uncapped_body = stdout_str(&first).replace("threads    = default", "");
    let capped_body = stdout_str(&capped).replace("threads    = 1", "");
    assert_eq!(uncapped_body, capped_body);
}

#[test]
fn simulate_json_schema_and_empty_forbidden_bin() {
    let out = kcbs(&["simulate", "--samples", "50000", "--seed", "3", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["command"], "simulate");
    assert_eq!(v["inputs"]["samples"], 50000);
    assert_eq!(v["inputs"]["seed"], 3);
    let results = &v["results"];
    assert_eq!(results["simulation"]["rng_algorithm"], "chacha8");
    assert_eq!(results["simulation"]["counts"][0], 0);
    assert_eq!(results["simulation"]["chunk_count"], 1);
    assert_eq!(results["z_scores"].as_array().unwrap().len(), 4);
}

#[test]
fn simulate_rejects_bad_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_kcbs-lab"))
        .args(["simulate", "--samples", "10"])
        .env("KCBS_LAB_THREADS", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("KCBS_LAB_THREADS"));
}

#[test]
fn report_can_be_written_to_a_file() {
    let path = std::env::temp_dir()
        .join(format!("kcbs-lab-cli-test-{}.json", std::process::id()));
    let out = kcbs(&[
        "pentagram",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["command"], "pentagram");
    std::fs::remove_file(&path).ok();
}

#[test]
fn unwritable_output_path_exits_2() {
    let out = kcbs(&[
        "sweep",
        "--grid",
        "2",
        "--output",
        "/nonexistent-dir/report.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
