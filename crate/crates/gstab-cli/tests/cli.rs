//! End-to-end tests of the `gstab` binary: exit codes, report contents,
//! CSV golden properties.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gstab"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn parse_csv(bytes: &[u8]) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = String::from_utf8(bytes.to_vec()).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|line| {
            line.split(',')
                .map(|cell| cell.parse::<f64>().unwrap())
                .collect()
        })
        .collect();
    (header, rows)
}

#[test]
fn check_passes_on_the_vacuum() {
    let output = run(&["check", fixture("vacuum.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["criteria"]["verdict"], "pass");
    assert_eq!(report["purity"], 1.0);
    assert!(report["physicality"]["physical"].as_bool().unwrap());
}

#[test]
fn check_fails_off_the_surface() {
    let output = run(&["check", fixture("squeezed_off_surface.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let report = stdout_json(&output);
    assert_eq!(report["criteria"]["verdict"], "fail");
    assert_eq!(report["criteria"]["first_failing_n"], 2);
    // unphysical state: purity is null, physicality flag false
    assert!(report["purity"].is_null());
    assert!(!report["physicality"]["physical"].as_bool().unwrap());
}

#[test]
fn check_rejects_malformed_scenarios() {
    let output = run(&["check", fixture("missing_cov_row.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("state.cov"), "{stderr}");

    let mut garbled = tempfile::NamedTempFile::new().unwrap();
    writeln!(garbled, "{{ not json").unwrap();
    let output = run(&["check", garbled.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn synthesize_returns_zero_hamiltonian_for_coherent_states() {
    let output = run(&["synthesize", fixture("vacuum.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    for row in report["hamiltonian"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            assert!(entry.as_f64().unwrap().abs() <= 1e-10);
        }
    }
    assert!(report["residuals"]["stationarity"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn synthesize_reports_residuals_on_the_surface() {
    let output = run(&["synthesize", fixture("surface_squeezed.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert!(report["residuals"]["stationarity"].as_f64().unwrap() <= 1e-8);
    assert!(report["residuals"]["diagonal"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn synthesize_names_the_degenerate_spectrum() {
    let output = run(&["synthesize", fixture("two_mode_vacuum.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("DegenerateSpectrum"), "{stderr}");
}

#[test]
fn synthesize_names_the_criteria_violation() {
    let output = run(&["synthesize", fixture("squeezed_off_surface.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("CriteriaViolated"), "{stderr}");
}

#[test]
fn simulate_keeps_stationary_states_constant() {
    let output = run(&[
        "simulate",
        fixture("vacuum.json").to_str().unwrap(),
        "--t-final",
        "10",
        "--dt",
        "0.01",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let (header, rows) = parse_csv(&output.stdout);
    assert_eq!(
        header,
        ["t", "xi_1", "xi_2", "V_11", "V_12", "V_22", "residual"]
    );
    assert_eq!(rows.len(), 1001);
    for row in &rows {
        assert!((row[3] - 0.5).abs() <= 1e-12);
        assert!(row[4].abs() <= 1e-12);
        assert!((row[5] - 0.5).abs() <= 1e-12);
        assert!(row[6] <= 1e-12);
    }
}

#[test]
fn simulate_matches_the_free_decay_closed_form() {
    let output = run(&[
        "simulate",
        fixture("decaying.json").to_str().unwrap(),
        "--t-final",
        "5",
        "--dt",
        "0.01",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let (_, rows) = parse_csv(&output.stdout);
    for row in &rows {
        let t = row[0];
        let expected_v = 2.0 * (-t).exp() + 0.5 * (1.0 - (-t).exp());
        assert!((row[3] - expected_v).abs() <= 1e-8, "t = {t}");
        assert!((row[5] - expected_v).abs() <= 1e-8, "t = {t}");
        let expected_mean = (-t / 2.0).exp();
        assert!((row[1] - expected_mean).abs() <= 1e-8, "t = {t}");
    }
}

#[test]
fn simulate_rejects_an_unstable_step() {
    let output = run(&[
        "simulate",
        fixture("vacuum.json").to_str().unwrap(),
        "--dt",
        "0.5",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("StepTooLarge"));
}

#[test]
fn csv_outputs_are_byte_identical_across_runs() {
    let args = [
        "scan",
        "--mode",
        "hyperboloid",
        "--y-min",
        "-1",
        "--y-max",
        "1",
        "--y-steps",
        "11",
        "--z-min",
        "-1",
        "--z-max",
        "1",
        "--z-steps",
        "11",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let sim_args = [
        "simulate",
        fixture("decaying.json").to_str().unwrap(),
        "--t-final",
        "1",
    ];
    let first = run(&sim_args);
    let second = run(&sim_args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn hyperboloid_scan_stays_on_the_surface() {
    let output = run(&[
        "scan",
        "--mode",
        "hyperboloid",
        "--y-min",
        "-2",
        "--y-max",
        "2",
        "--y-steps",
        "21",
        "--z-min",
        "-2",
        "--z-max",
        "2",
        "--z-steps",
        "21",
        "--x0",
        "1.5",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let (header, rows) = parse_csv(&output.stdout);
    assert_eq!(
        header,
        ["y", "z", "V_xx", "V_pp", "V_xp", "purity", "omega_residual"]
    );
    assert_eq!(rows.len(), 21 * 21);
    for row in &rows {
        assert!(row[6].abs() <= 1e-9);
        assert!(row[5] > 0.0 && row[5] <= 1.0 + 1e-10);
    }
}

#[test]
fn epr_scan_finds_the_unique_solution_point() {
    let output = run(&[
        "scan",
        "--mode",
        "epr",
        "--sigma-p-min",
        "0.5",
        "--sigma-p-max",
        "1.5",
        "--sigma-p-steps",
        "3",
        "--sigma-x-min",
        "0.5",
        "--sigma-x-max",
        "1.5",
        "--sigma-x-steps",
        "3",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let (_, rows) = parse_csv(&output.stdout);
    let solutions: Vec<_> = rows
        .iter()
        .filter(|row| (row[2] - 2.0).abs() <= 1e-12)
        .collect();
    assert_eq!(solutions.len(), 1);
    assert_eq!(solutions[0][0], 1.0);
    assert_eq!(solutions[0][1], 1.0);
    assert!(solutions[0][3].abs() <= 1e-12);
    // far from the solution: lhs = 4.25 at (0.5, 0.5)
    assert!((rows[0][2] - 4.25).abs() <= 1e-12);
}

#[test]
fn scan_rejects_empty_ranges() {
    let output = run(&["scan", "--mode", "hyperboloid", "--y-steps", "0"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("empty range"));
}

#[test]
fn synthesized_hamiltonian_round_trips_through_a_scenario() {
    let output = run(&["synthesize", fixture("surface_squeezed.json").to_str().unwrap()]);
    let report = stdout_json(&output);
    let hamiltonian = report["hamiltonian"].clone();

    let scenario = serde_json::json!({
        "modes": 1,
        "lindblad": [{"damped_mode": 0, "gamma": 1.0}],
        "hamiltonian": hamiltonian,
        "state": {
            "mean": [0.0, 0.0],
            "cov": [[0.3333333333333333, 0.0], [0.0, 1.0]],
        },
    });
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{scenario}").unwrap();

    let output = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["classification"], "strict");
    assert_eq!(report["criteria"]["verdict"], "pass");

    // displacing the mean demotes the verdict to relaxed
    let mut displaced = scenario.clone();
    displaced["state"]["mean"] = serde_json::json!([1.0, 0.0]);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{displaced}").unwrap();
    let output = run(&["analyze", file.path().to_str().unwrap()]);
    let report = stdout_json(&output);
    assert_eq!(report["classification"], "relaxed");
}

#[test]
fn analyze_reports_the_two_mode_block() {
    let output = run(&["analyze", fixture("two_mode_vacuum.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["classification"], "strict");
    assert_eq!(report["two_mode"]["det_v12"], 0.0);
    assert_eq!(report["two_mode"]["entanglement_necessary"], false);
    assert_eq!(
        report["symplectic_eigenvalues"].as_array().unwrap().len(),
        2
    );
}
