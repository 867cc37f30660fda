//! End-to-end runs of the `gtep` binary against generated instance files.

use std::path::{Path, PathBuf};
use std::process::Command;

use gtep_testkit::instances::{random_instance, GenOptions};

fn gtep() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gtep"))
}

fn write_instance(dir: &Path, seed: u64, opts: &GenOptions) -> PathBuf {
    let instance = random_instance(seed, opts);
    let path = dir.join("instance.json");
    std::fs::write(&path, format!("{:#}\n", instance.to_json())).unwrap();
    path
}

#[test]
fn validate_accepts_clean_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), 101, &GenOptions::lean(2));
    let out = gtep().args(["validate", "-i"]).arg(&path).output().unwrap();
    assert!(out.status.success(), "{:?}", out);
}

#[test]
fn validate_flags_bad_probabilities_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), 102, &GenOptions::lean(1));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["scenarios"]["probabilities"] = serde_json::json!([0.9]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = gtep().args(["validate", "-i"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("probability-sum"), "{}", stdout);
}

#[test]
fn validate_flags_unknown_bus_reference() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), 103, &GenOptions::lean(1));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["system"]["thermals"][0]["bus_id"] = serde_json::json!("nowhere");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = gtep().args(["validate", "-i"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("th1") && stdout.contains("nowhere"), "{}", stdout);
}

#[test]
fn missing_file_is_io_failure() {
    let out = gtep()
        .args(["validate", "-i", "/definitely/not/here.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn plan_writes_reports_and_dispatch_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), 104, &GenOptions::lean(2));
    let out_dir = dir.path().join("run");
    let out = gtep()
        .args(["plan", "-i"])
        .arg(&path)
        .args(["-o"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["plan.json", "costs.csv", "dispatch.csv"] {
        assert!(out_dir.join(name).exists(), "{} missing", name);
    }
    // dispatch with the written plan reproduces a pure-operation run
    let dispatch_dir = dir.path().join("dispatch");
    let out = gtep()
        .args(["dispatch", "-i"])
        .arg(&path)
        .args(["-o"])
        .arg(&dispatch_dir)
        .args(["--plan"])
        .arg(out_dir.join("plan.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dispatch_dir.join("dispatch.csv").exists());
    assert!(dispatch_dir.join("costs.csv").exists());
}

#[test]
fn export_produces_reparseable_mps() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), 105, &GenOptions::rich(2));
    let out_dir = dir.path().join("exported");
    let out = gtep()
        .args(["export", "-i"])
        .arg(&path)
        .args(["-o"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(out_dir.join("model_y1.mps")).unwrap();
    let parsed: gtep_milp::Model = gtep_milp::mps::parse_mps(&text).unwrap();
    assert!(parsed.num_vars() > 0 && parsed.num_rows() > 0);
    let lp = std::fs::read_to_string(out_dir.join("model_y1.lp")).unwrap();
    assert!(lp.contains("Minimize") && lp.contains("Binaries"));
}

#[test]
fn suggest_days_emits_assignment_fragment() {
    let dir = tempfile::tempdir().unwrap();
    // two alternating day shapes
    let mut demand = Vec::with_capacity(365);
    for d in 0..365 {
        let mut day = vec![30.0; 24];
        if d % 2 == 0 {
            day[9] = 80.0;
        } else {
            day[20] = 80.0;
        }
        demand.push(day);
    }
    let profiles = serde_json::json!({ "demand": demand });
    let ppath = dir.path().join("profiles.json");
    std::fs::write(&ppath, profiles.to_string()).unwrap();
    let opath = dir.path().join("assignment.json");
    let out = gtep()
        .args(["suggest-days", "--profiles"])
        .arg(&ppath)
        .args(["-c", "2", "--seed", "7", "-o"])
        .arg(&opath)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let fragment: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&opath).unwrap()).unwrap();
    assert_eq!(fragment["day_assignment"].as_array().unwrap().len(), 365);
}

#[test]
fn plan_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), 106, &GenOptions::lean(2));
    let mut digests = Vec::new();
    for run in ["a", "b"] {
        let out_dir = dir.path().join(run);
        let out = gtep()
            .args(["plan", "-i"])
            .arg(&path)
            .args(["-o"])
            .arg(&out_dir)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let mut digest = Vec::new();
        for name in ["plan.json", "costs.csv", "dispatch.csv"] {
            digest.push(std::fs::read(out_dir.join(name)).unwrap());
        }
        digests.push(digest);
    }
    assert_eq!(digests[0], digests[1]);
}
