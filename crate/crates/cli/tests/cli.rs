//! End-to-end tests of the `tsolve` binary: spec'd exit codes, report
//! schema, determinism, and the worked examples.

use std::io::Write;
use std::process::{Command, Output};

fn tsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsolve"))
        .args(args)
        .env_remove("TSOLVE_MAX_QUBITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn solve_feasible_with_oracle() {
    let out = tsolve(&[
        "solve", "--group", "sym", "-n", "4", "-m", "2", "--theta", "3pi/4",
    ]);
    let v = json(&out);
    assert_eq!(v["schema"], "tsolve/1");
    assert_eq!(v["command"], "solve");
    assert_eq!(v["result"]["feasible"], true);
    let offdiag = v["result"]["oracle"]["max_offdiag"].as_f64().unwrap();
    assert!(offdiag < 1e-9, "oracle offdiag {offdiag}");
    assert_eq!(v["result"]["oracle"]["is_ts"], true);
}

#[test]
fn solve_infeasible_is_still_exit_zero() {
    let out = tsolve(&[
        "solve", "--group", "sym", "-n", "4", "-m", "2", "--theta", "2.0",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["feasible"], false);
}

#[test]
fn truncated_radians_fall_below_threshold() {
    // 2.356194 is 3pi/4 truncated to 6 decimals and sits strictly below the
    // n=4 half-filling threshold; feasibility there jumps discontinuously
    // (the nonnegativity constraints force the whole solution to zero), so
    // the verdict is a clean "infeasible". Exact pi fractions exist for
    // precisely this reason.
    let out = tsolve(&[
        "solve", "--group", "sym", "-n", "4", "-m", "2", "--theta", "2.356194",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["feasible"], false);
    let out = tsolve(&[
        "solve", "--group", "sym", "-n", "4", "-m", "2", "--theta", "3pi/4",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["feasible"], true);
}

#[test]
fn solve_cyclic_c4_at_exact_half_pi() {
    let out = tsolve(&[
        "solve", "--group", "cyc", "-n", "4", "-m", "2", "--theta", "pi/2",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["feasible"], true);
    assert_eq!(v["result"]["oracle"]["is_ts"], true);
}

#[test]
fn solve_closed_form_and_fallback() {
    let out = tsolve(&[
        "solve",
        "--group",
        "sym",
        "-n",
        "5",
        "-m",
        "1",
        "--theta",
        "pi/2",
        "--method",
        "closed-form",
    ]);
    // pi/2 is below the m=1 threshold arccos(-2/3): refused without fallback.
    assert_eq!(out.status.code(), Some(1));
    let out = tsolve(&[
        "solve",
        "--group",
        "sym",
        "-n",
        "5",
        "-m",
        "1",
        "--theta",
        "pi/2",
        "--method",
        "closed-form",
        "--lp-fallback",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["feasible"], false);
    let out = tsolve(&[
        "solve",
        "--group",
        "sym",
        "-n",
        "4",
        "-m",
        "2",
        "--theta",
        "3pi/4",
        "--method",
        "closed-form",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["matrix_variant"], "closed-form");
    assert_eq!(v["result"]["oracle"]["is_ts"], true);
}

#[test]
fn threshold_examples() {
    let out = tsolve(&["threshold", "--group", "sym", "-n", "6", "-m", "3"]);
    let v = json(&out);
    let lp = v["result"]["theta_lp"].as_f64().unwrap();
    assert!((lp - 5.0 * std::f64::consts::PI / 6.0).abs() < 1e-6);

    let out = tsolve(&["threshold", "--group", "sym", "-n", "5", "-m", "1"]);
    let v = json(&out);
    let formula = v["result"]["theta_formula"].as_f64().unwrap();
    assert!((formula - (-2.0f64 / 3.0).acos()).abs() < 1e-12);
    assert!(v["result"]["delta"].as_f64().unwrap() < 1e-6);

    let out = tsolve(&["threshold", "--group", "sym", "-n", "3", "-m", "0"]);
    let v = json(&out);
    assert_eq!(v["result"]["theta_formula"].as_f64().unwrap(), 0.0);
    assert_eq!(v["result"]["theta_lp"].as_f64().unwrap(), 0.0);
}

#[test]
fn verify_c4_fixture_roundtrip() {
    let dir = std::env::temp_dir().join(format!("tsolve-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let state_path = dir.join("c4_state.txt");
    let ts_path = dir.join("c4_traj.txt");
    let mut f = std::fs::File::create(&state_path).unwrap();
    for bits in ["0011", "1100", "0110", "1001"] {
        writeln!(f, "{bits} 0.5 0.0").unwrap();
    }
    let mut f = std::fs::File::create(&ts_path).unwrap();
    for t in ["{1,2}", "{2,3}", "{3,4}", "{4,1}"] {
        writeln!(f, "{t}").unwrap();
    }
    let out = tsolve(&[
        "verify",
        "--state",
        state_path.to_str().unwrap(),
        "--trajectories",
        ts_path.to_str().unwrap(),
        "-n",
        "4",
        "--theta",
        "pi/2",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["is_ts"], true);

    let out = tsolve(&[
        "verify",
        "--state",
        state_path.to_str().unwrap(),
        "--trajectories",
        ts_path.to_str().unwrap(),
        "-n",
        "4",
        "--theta",
        "pi/4",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["is_ts"], false);
    // Off-diagonals scale like cos(pi/4) between adjacent windows.
    let g01 = &v["result"]["gram"][0][1];
    assert!((g01["re"].as_f64().unwrap().abs() - 0.5f64.sqrt()).abs() < 1e-9);

    // Malformed trajectory: qubit 9 on a 4-qubit sensor is a parse error.
    let bad = dir.join("bad_traj.txt");
    std::fs::write(&bad, "{1,9}\n").unwrap();
    let out = tsolve(&[
        "verify",
        "--state",
        state_path.to_str().unwrap(),
        "--trajectories",
        bad.to_str().unwrap(),
        "-n",
        "4",
        "--theta",
        "pi/2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn codes_examples_pass() {
    for example in ["c4", "c6", "toric"] {
        let out = tsolve(&["codes", example]);
        let v = json(&out);
        assert_eq!(v["result"]["all_pass"], true, "{example}");
    }
    let out = tsolve(&["codes", "cts", "-n", "3", "-m", "1"]);
    let v = json(&out);
    assert_eq!(v["result"]["all_pass"], true);
    let out = tsolve(&[
        "codes",
        "repetition-demo",
        "--n-prime",
        "2",
        "--tol",
        "1e-9",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["all_pass"], true);
    let out = tsolve(&["codes", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn orbits_text_dump_format() {
    let out = tsolve(&["orbits", "--group", "sym", "-n", "3", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "000 111");
    assert!(lines[1].starts_with("001 "));
    assert_eq!(lines[1].split_whitespace().count(), 6);
}

#[test]
fn generic_group_from_file() {
    let dir = std::env::temp_dir().join(format!("tsolve-gens-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gens = dir.join("gens.txt");
    // The cyclic rotation on 4 qubits as an explicit generator.
    std::fs::write(&gens, "2 3 4 1\n").unwrap();
    let out = tsolve(&[
        "solve",
        "--group",
        "generic",
        "--generators",
        gens.to_str().unwrap(),
        "-n",
        "4",
        "-m",
        "2",
        "--theta",
        "pi/2",
    ]);
    let v = json(&out);
    assert_eq!(v["result"]["feasible"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_csv_format() {
    let out = tsolve(&[
        "sweep", "--family", "sym-half", "--n-min", "2", "--n-max", "4", "--steps", "64",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,m,group,theta_formula,theta_lp,delta");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("2,1,sym,"));
}

#[test]
fn reports_are_byte_deterministic() {
    let a = tsolve(&[
        "solve", "--group", "cyc", "-n", "6", "-m", "3", "--theta", "2pi/3",
    ]);
    let b = tsolve(&[
        "solve", "--group", "cyc", "-n", "6", "-m", "3", "--theta", "2pi/3",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn resource_cap_exit_code() {
    let out = tsolve(&[
        "solve", "--group", "sym", "-n", "30", "-m", "15", "--theta", "pi",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_var_overrides_statevector_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_tsolve"))
        .args([
            "solve", "--group", "sym", "-n", "6", "-m", "3", "--theta", "pi",
        ])
        .env("TSOLVE_MAX_QUBITS", "4")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["feasible"], true);
    assert!(v["result"]["oracle"].is_null());
    assert!(v["result"]["note"].as_str().unwrap().contains("skipped"));
}
