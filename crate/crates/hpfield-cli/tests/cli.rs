//! End-to-end checks of the binary: exit codes, report files, CSV output,
//! and determinism of reports modulo the timestamp field.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hpfield"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_out(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hpfield-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn report_json(dir: &PathBuf, name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(name)).expect("report written");
    serde_json::from_str(&text).expect("valid JSON")
}

#[test]
fn verify_algebra_passes_and_writes_versioned_report() {
    let out = temp_out("verify-algebra");
    let result = run(&["verify-algebra", "--samples", "50", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let report = report_json(&out, "algebra_report.json");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "verify-algebra");
    assert_eq!(report["seed"], 42);
    let checks = report["report"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert_eq!(report["report"]["status"], "pass");
}

#[test]
fn verify_dirac_filter_keeps_one_base_dimension() {
    let out = temp_out("verify-dirac-n0");
    let result = run(&[
        "verify-dirac",
        "--samples",
        "5",
        "--n",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let report = report_json(&out, "dirac_report.json");
    let checks = report["report"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for check in checks {
        let name = check["check"].as_str().unwrap();
        assert!(name.ends_with("-n0"), "unexpected row {name}");
    }
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let out = temp_out("bad-config");
    std::fs::create_dir_all(&out).unwrap();
    let cfg = out.join("bad.cfg");
    std::fs::write(&cfg, "not_a_key = 3\n").unwrap();
    let result = run(&["solve", "rod", "--config", cfg.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2), "{result:?}");
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("not_a_key"), "{stderr}");
}

#[test]
fn unknown_example_is_a_usage_error() {
    let result = run(&["solve", "nosuch"]);
    assert_eq!(result.status.code(), Some(2), "{result:?}");
}

#[test]
fn failed_check_exits_one_and_still_writes_the_report() {
    let out = temp_out("forced-fail");
    let result = run(&[
        "solve",
        "rod",
        "--tol",
        "1e-30",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1), "{result:?}");
    let report = report_json(&out, "solve_report.json");
    assert_eq!(report["report"]["status"], "fail");
}

#[test]
fn solve_rod_converges_and_writes_the_displacement_grid() {
    let out = temp_out("solve-rod");
    let result = run(&["solve", "rod", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    assert!(out.join("u.csv").is_file());
    assert!(out.join("grid.txt").is_file());
    let report = report_json(&out, "solve_report.json");
    assert_eq!(report["report"]["status"], "pass");
    assert_eq!(report["report"]["example"], "rod");
    // One damped-Newton step suffices on a linear problem.
    assert_eq!(report["report"]["newton_iterations"], 1);
}

#[test]
fn elastostatics_alias_and_config_params_reach_the_model() {
    let out = temp_out("alias");
    std::fs::create_dir_all(&out).unwrap();
    let cfg = out.join("rod.cfg");
    std::fs::write(&cfg, "# pulled rod\nmu = 1.25\ntraction = 0.3\ngrid = 9\n").unwrap();
    let result = run(&[
        "solve",
        "elastostatics",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let report = report_json(&out, "solve_report.json");
    assert_eq!(report["report"]["example"], "rod");
    assert_eq!(report["report"]["grid"][0], 9);
}

#[test]
fn reports_are_deterministic_apart_from_the_timestamp() {
    let strip = |dir: &PathBuf| {
        let mut v = report_json(dir, "dirac_report.json");
        v.as_object_mut().unwrap().remove("generated_at");
        v
    };
    let out1 = temp_out("determinism-1");
    let out2 = temp_out("determinism-2");
    for out in [&out1, &out2] {
        let result = run(&["verify-dirac", "--samples", "5", "--out", out.to_str().unwrap()]);
        assert_eq!(result.status.code(), Some(0), "{result:?}");
    }
    assert_eq!(strip(&out1), strip(&out2));
}

#[test]
fn residual_shear_reports_the_dae_invariants() {
    let out = temp_out("residual-shear");
    let result = run(&[
        "residual",
        "shear",
        "--grid",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let report = report_json(&out, "residual_report.json");
    let checks = report["report"]["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert!(names.contains(&"constraint-violation"));
    assert!(names.contains(&"per-step-energy-drift"));
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}
