//! End-to-end checks of the binary: output values, CSV shape, and the
//! byte-identical determinism contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qkd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = qkd(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qkd-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn bb84_headline_values() {
    let out = stdout_of(&["bb84"]);
    assert!(out.starts_with("info_per_bit=0.500000 qber=0.250000"));
    assert!(out.contains("# seed: 42"));
    assert!(out.contains("xi,info_per_bit,qber"));
}

#[test]
fn bb84_scales_with_fraction() {
    let out = stdout_of(&["bb84", "--xi", "0.5"]);
    assert!(out.contains("xi=0.500000 info_per_bit=0.250000 qber=0.125000"));
}

#[test]
fn bb84_rejects_bad_fraction() {
    let out = qkd(&["bb84", "--xi", "1.5"]);
    assert!(!out.status.success());
}

#[test]
fn bounds_csv_is_ordered() {
    let out = stdout_of(&["bounds", "--samples", "51"]);
    let mut rows = 0;
    for line in out.lines() {
        if line.starts_with('#') || line.starts_with("qber,") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        let ir: f64 = fields[1].parse().unwrap();
        let incoherent: f64 = fields[2].parse().unwrap();
        assert!(ir <= incoherent + 1e-12);
        if !fields[3].is_empty() {
            let six: f64 = fields[3].parse().unwrap();
            assert!(six <= incoherent + 1e-12);
        } else {
            // only the q = 1/2 endpoint lies outside the six-state domain
            let q: f64 = fields[0].parse().unwrap();
            assert!((q - 0.5).abs() < 1e-12);
        }
        rows += 1;
    }
    assert_eq!(rows, 51);
}

#[test]
fn sweep_requires_out_path() {
    let out = qkd(&["sweep", "--steps", "2"]);
    assert!(!out.status.success());
}

#[test]
fn sweep_is_byte_identical_and_well_shaped() {
    let path_a = temp_path("sweep-a.csv");
    let path_b = temp_path("sweep-b.csv");
    for path in [&path_a, &path_b] {
        let out = qkd(&["sweep", "--steps", "2", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(a, b, "sweep output differs between identical runs");

    let text = String::from_utf8(a).unwrap();
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("c1,"))
        .count();
    assert_eq!(data_rows, 8 * 6);
    assert!(text.lines().any(|l| l == "c1,c2,c3,config,xi,info_bits,qber1,qber2,qber"));
    let bb84_row = text
        .lines()
        .find(|l| l.starts_with("0.00000000000e0,0.00000000000e0,0.00000000000e0,zz"))
        .expect("identity zz row present");
    assert!(bb84_row.contains("5.00000000000e-1"));
    std::fs::remove_file(&path_a).ok();
    std::fs::remove_file(&path_b).ok();
}

#[test]
fn gate_eval_reports_best_config() {
    let out = stdout_of(&["gate-eval", "--c1", "0", "--c2", "1.5707963267948966", "--c3", "0"]);
    let best_line = out
        .lines()
        .find(|l| l.starts_with("best="))
        .expect("best line present");
    assert!(best_line.contains("info_per_bit=0.125000"));
    assert!(best_line.contains("qber=0.500000"));
}

#[test]
fn gate_eval_rejects_out_of_range_params() {
    let out = qkd(&["gate-eval", "--c1", "-0.5", "--c2", "0", "--c3", "0"]);
    assert!(!out.status.success());
}

#[test]
fn envelope_endpoints() {
    let out = stdout_of(&["envelope", "--samples", "5"]);
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("c1,"))
        .collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].contains("5.00000000000e-1,2.50000000000e-1,2.50000000000e-1,2.50000000000e-1"));
    assert!(rows[4].contains("1.25000000000e-1,5.00000000000e-1,5.00000000000e-1,5.00000000000e-1"));
}

#[test]
fn approx_fixed_product_state_is_exactly_representable() {
    let out = stdout_of(&["approx", "--alice-fixed", "0,0,0,0", "--inner-restarts", "8"]);
    let line = out.lines().next().unwrap();
    let error: f64 = line
        .split("error=")
        .nth(1)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(error <= 1e-6, "got {line}");
}

#[test]
fn approx_fixed_reference_point() {
    let out = stdout_of(&["approx", "--alice-fixed", "1.228,0.848,-0.499,0.474"]);
    let line = out.lines().next().unwrap();
    let error: f64 = line
        .split("error=")
        .nth(1)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((error - 0.673).abs() < 5e-3, "error = {error}");
}

#[test]
fn approx_is_deterministic() {
    let args = ["approx", "--restarts", "1", "--inner-restarts", "4"];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(a, b);
}

#[test]
fn epr_reports_zero_qber_and_full_knowledge() {
    let out = stdout_of(&["epr"]);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("a1=")).collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert!(row.contains("qber=0.000000"));
        assert!(row.contains("eve_info=2.0"));
    }
}

#[test]
fn epr_verifies_bell_images_and_prints_corrections() {
    let out = stdout_of(&["epr", "--verify-bell", "--show-corrections"]);
    assert_eq!(out.matches("PASS").count(), 4);
    assert!(out.contains("E_00"));
    assert!(out.contains("E_11"));
}

#[test]
fn reconcile_error_free_channel() {
    let out = stdout_of(&["reconcile", "-n", "1000", "-p", "0"]);
    assert!(out.contains("channel_errors=0"));
    assert!(out.contains("residual_errors=0"));
}

#[test]
fn reconcile_meets_shannon_floor() {
    let out = stdout_of(&["reconcile", "-n", "10000", "-p", "0.05"]);
    let line = out
        .lines()
        .find(|l| l.starts_with("cascade"))
        .expect("cascade line");
    let leaked: f64 = line
        .split("leaked_bits=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(leaked >= 2864.0, "leaked = {leaked}");
    assert!(line.contains("residual_errors=0"));
}

#[test]
fn reconcile_simple_path_prints_rounds() {
    let out = stdout_of(&["reconcile", "--simple", "-n", "4096", "-p", "0.1", "--rounds", "3"]);
    let rounds: Vec<&str> = out.lines().filter(|l| l.starts_with("round=")).collect();
    assert_eq!(rounds.len(), 3);
}

#[test]
fn reconcile_amplify_reports_knowledge_drop() {
    let out = stdout_of(&["reconcile", "-n", "2000", "-p", "0.05", "--amplify"]);
    let line = out
        .lines()
        .find(|l| l.starts_with("amplify"))
        .expect("amplify line");
    let after: f64 = line
        .split("known_after=")
        .nth(1)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((after - 0.25).abs() < 0.05, "after = {after}");
}

#[test]
fn seed_flag_changes_reconcile_transcript() {
    let a = stdout_of(&["reconcile", "-n", "2000", "-p", "0.05", "--seed", "1"]);
    let b = stdout_of(&["reconcile", "-n", "2000", "-p", "0.05", "--seed", "2"]);
    let c = stdout_of(&["reconcile", "-n", "2000", "-p", "0.05", "--seed", "1"]);
    assert_ne!(a, b);
    assert_eq!(a, c);
}
