//! End-to-end command-line tests: documented example invocations, report
//! determinism, file output, and the exit-code contract.

use std::process::{Command, Output};

fn mqlandau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mqlandau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = mqlandau(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn results(report: &serde_json::Value) -> &Vec<serde_json::Value> {
    report["results"].as_array().expect("results array")
}

#[test]
fn spectrum_coulomb_ground_state_rows() {
    let report = stdout_json(&[
        "spectrum", "--scenario", "coulomb", "--m", "1", "--alpha", "1", "--n", "1", "--l",
        "0..2", "--oracle",
    ]);
    let rows = results(&report);
    assert_eq!(rows.len(), 3);
    let expected = [(0, 2.0, 4.0), (1, 2.0 / 3.0, 4.0 / 3.0), (2, 0.4, 0.8)];
    for (row, (l, freq, energy)) in rows.iter().zip(expected) {
        assert_eq!(row["n"], 1);
        assert_eq!(row["l"], l);
        assert!((row["frequency"].as_f64().unwrap() - freq).abs() < 1e-11);
        assert!((row["energy"].as_f64().unwrap() - energy).abs() < 1e-11);
        let rel_dev = row["rel_dev"].as_f64().expect("oracle deviation present");
        assert!(rel_dev < 1e-3, "oracle deviation {rel_dev}");
    }
    assert_eq!(report["config"]["schema_version"], 1);
    assert_eq!(report["config"]["scenario"], "coulomb");
}

#[test]
fn spectrum_hardwall_bessel_zeros() {
    let report = stdout_json(&[
        "spectrum", "--scenario", "hardwall", "--m", "1", "--rho0", "1", "--Mlambda", "0",
        "--n", "0..2", "--l", "0", "--exact",
    ]);
    let zeros = [2.40483, 5.52008, 8.65373];
    for (row, j) in results(&report).iter().zip(zeros) {
        let s = (2.0 * row["energy"].as_f64().unwrap()).sqrt();
        assert!((s - j).abs() / j < 1e-5, "sqrt(2E) = {s} vs {j}");
    }
}

#[test]
fn spectrum_mixed_reports_corrected_cubic() {
    let report = stdout_json(&[
        "spectrum", "--scenario", "mixed", "--m", "1", "--alpha", "1", "--eta", "1", "--n",
        "1", "--l", "0",
    ]);
    let rows = results(&report);
    assert_eq!(rows.len(), 1);
    let freq = rows[0]["frequency"].as_f64().unwrap();
    assert!((freq - 3.3345).abs() < 5e-4, "cubic root {freq}");
    let note = rows[0]["note"].as_str().expect("note on mixed rows");
    assert!(note.contains("alpha*eta"), "note explains the coupling product");
}

#[test]
fn spectrum_landau_levels() {
    let report = stdout_json(&[
        "spectrum", "--scenario", "landau", "--Mlambda", "1", "--n", "0..1", "--l", "0",
    ]);
    let rows = results(&report);
    assert_eq!(rows[0]["energy"], 1.0);
    assert_eq!(rows[1]["energy"], 3.0);
}

#[test]
fn frequency_command_exposes_roots() {
    let report = stdout_json(&[
        "frequency", "--scenario", "linear", "--m", "1", "--eta", "1", "--n", "1", "--l",
        "0..1",
    ]);
    let rows = results(&report);
    assert_eq!(rows.len(), 2);
    assert!((rows[0]["frequency"].as_f64().unwrap() - 1.144714242553).abs() < 1e-9);
    assert!((rows[1]["frequency"].as_f64().unwrap() - 1.357208808297).abs() < 1e-9);
}

#[test]
fn wavefunction_csv_normalized_and_shaped() {
    let out = mqlandau(&[
        "wavefunction", "--scenario", "coulomb", "--m", "1", "--alpha", "1", "--n", "1",
        "--l", "0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# scenario=coulomb"));
    assert!(header.contains("frequency=2.0"));
    assert_eq!(lines.next().unwrap(), "r,R,weighted_density");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 601);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[600][0], 6.0);

    // Trapezoid integral of |R|^2 r on the default grid. The rule's own
    // O(h^2) bias here is ~3e-6 (from f'(0) = R(0)^2 > 0), so the unit-norm
    // assertion gets a matching tolerance; the refined grid below tightens it.
    let trapezoid = |rows: &[Vec<f64>]| {
        let h = rows[1][0] - rows[0][0];
        let mut acc = 0.0;
        for pair in rows.windows(2) {
            acc += 0.5 * (pair[0][2] + pair[1][2]) * h;
        }
        acc
    };
    assert!((trapezoid(&rows) - 1.0).abs() < 5e-6);

    let out = mqlandau(&[
        "wavefunction", "--scenario", "coulomb", "--m", "1", "--alpha", "1", "--n", "1",
        "--l", "0", "--points", "6001",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert!((trapezoid(&rows) - 1.0).abs() < 1e-6);
}

#[test]
fn wavefunction_power_prefactor_for_l2() {
    let out = mqlandau(&[
        "wavefunction", "--scenario", "coulomb", "--m", "1", "--alpha", "1", "--n", "1",
        "--l", "2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows[0][1], 0.0, "R(0) = 0 for |l| >= 1");
    let ratio = rows[1][1] / rows[2][1];
    let quadratic = (rows[1][0] / rows[2][0]).powi(2);
    assert!(
        (ratio / quadratic - 1.0).abs() < 0.01,
        "onset ratio {ratio} vs r^2 law {quadratic}"
    );
}

#[test]
fn verify_json_all_pass() {
    let report = stdout_json(&["verify", "--json"]);
    let checks = report["checks"].as_array().expect("checks array");
    assert!(checks.len() >= 15);
    for check in checks {
        assert_eq!(
            check["pass"], true,
            "check {} failed: measured {}, tolerance {}",
            check["name"], check["measured"], check["tolerance"]
        );
        assert!(check["measured"].is_number());
        assert!(check["tolerance"].is_number());
    }
    assert!(report["results"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "spectrum", "--scenario", "mixed", "--m", "1", "--alpha", "1", "--eta", "1", "--n",
        "1", "--l", "-2..2", "--oracle",
    ];
    let first = mqlandau(&args);
    let second = mqlandau(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let first = mqlandau(&["verify", "--json"]);
    let second = mqlandau(&["verify", "--json"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_file_written_atomically() {
    let dir = std::env::temp_dir().join(format!("mqlandau-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = [
        "spectrum".to_string(),
        "--scenario".into(),
        "coulomb".into(),
        "--alpha".into(),
        "1".into(),
        "--n".into(),
        "1".into(),
        "--l".into(),
        "0".into(),
        "--output".into(),
        path.to_str().unwrap().to_string(),
    ];
    let argv: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    let out = mqlandau(&argv);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"energy\": 4.0"));
    assert!(!dir.join("report.json.tmp").exists(), "no temp file left");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_and_diagnostics() {
    // Validation failure names the flag and precondition.
    let out = mqlandau(&[
        "spectrum", "--scenario", "coulomb", "--alpha", "-1", "--n", "1", "--l", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--alpha") && err.contains("> 0"), "got: {err}");

    // Flag that does not apply to the scenario.
    let out = mqlandau(&[
        "spectrum", "--scenario", "coulomb", "--alpha", "1", "--eta", "1", "--n", "1", "--l",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--eta"));

    // n = 0 invalid for constrained scenarios.
    let out = mqlandau(&[
        "spectrum", "--scenario", "coulomb", "--alpha", "1", "--n", "0", "--l", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));

    // Numerical non-convergence: bracket without enough roots.
    let out = mqlandau(&[
        "spectrum", "--scenario", "hardwall", "--Mlambda", "0.01", "--rho0", "1", "--n", "5",
        "--l", "0", "--exact", "--e-max", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bracket"));

    // Out-of-range root index.
    let out = mqlandau(&[
        "wavefunction", "--scenario", "coulomb", "--alpha", "1", "--n", "1", "--l", "0",
        "--root-index", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--root-index"));

    // Unknown flags are validation failures too.
    let out = mqlandau(&["spectrum", "--scenario", "coulomb", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
}
