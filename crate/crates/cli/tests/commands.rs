use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rydberg1d"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn transitions_file(body: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(body.as_bytes()).unwrap();
    file
}

#[test]
fn constants_for_helium() {
    let out = run(&["constants", "--epsilon", "1.05723"]);
    assert!(out.status.success());
    let doc = json(&out);
    let r = &doc["results"];
    assert!((f(&r["coupling_z"]) - 0.006_954_7).abs() < 1e-6);
    assert!((f(&r["e0_ghz"]) - 159.12).abs() / 159.12 < 5e-4);
    assert!((f(&r["b0_angstrom"]) - 76.01).abs() / 76.01 < 2e-3);
    assert!(doc["checks"].as_array().unwrap().is_empty());
}

#[test]
fn constants_edge_cases() {
    let out = run(&["constants", "--epsilon", "3"]);
    assert!((f(&json(&out)["results"]["coupling_z"]) - 0.125).abs() < 1e-12);
    let out = run(&["constants", "--epsilon", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no binding"));
    let custom = run(&[
        "constants",
        "--epsilon",
        "3",
        "--rydberg-ev",
        "10",
        "--bohr-angstrom",
        "0.5",
    ]);
    let r = &json(&custom)["results"];
    assert!((f(&r["e0_mev"]) - 156.25).abs() < 1e-9);
    assert!((f(&r["b0_angstrom"]) - 4.0).abs() < 1e-12);
}

#[test]
fn spectrum_table() {
    let out = run(&[
        "spectrum", "--e0-ghz", "158.4", "--delta", "0.0237", "--nmax", "3",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&out);
    assert_eq!(
        rows[0],
        ["n", "n_star", "energy_ghz", "delta_to_ground_ghz"]
    );
    assert_eq!(rows.len(), 4);
    let d2: f64 = rows[2][3].parse().unwrap();
    let d3: f64 = rows[3][3].parse().unwrap();
    assert!((d2 - 125.628).abs() < 1e-3);
    assert!((d3 - 148.302).abs() < 1e-3);

    let balmer = csv_rows(&run(&[
        "spectrum", "--delta", "0", "--e0-ghz", "159.123", "--nmax", "2",
    ]));
    assert!((balmer[2][3].parse::<f64>().unwrap() - 119.342).abs() < 1e-3);

    let single = csv_rows(&run(&["spectrum", "--e0-ghz", "158.4", "--nmax", "1"]));
    assert_eq!(single.len(), 2);
    assert_eq!(single[1][3], "0");

    assert_eq!(
        run(&["spectrum", "--e0-ghz", "158.4", "--delta", "1.5", "--nmax", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["spectrum", "--e0-ghz", "158.4", "--nmax", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn wavefunction_samples() {
    let out = run(&[
        "wavefunction",
        "--n",
        "1",
        "--delta",
        "0",
        "--xmax-x0",
        "10",
        "--points",
        "11",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&out);
    assert_eq!(rows[0], ["x_over_x0", "value"]);
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[3][0], "2");
    assert!((rows[3][1].parse::<f64>().unwrap() - 0.52026).abs() < 1e-5);
    assert_eq!(
        run(&[
            "wavefunction",
            "--n",
            "1",
            "--xmax-x0",
            "10",
            "--points",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn wavefunction_isospectral_and_units() {
    let out = run(&[
        "wavefunction",
        "--n",
        "2",
        "--isospectral",
        "--bigr",
        "-2",
        "--xmax-x0",
        "60",
        "--points",
        "601",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&out);
    // Trapezoid norm of the partner state on a modest grid.
    let vals: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    let plain = csv_rows(&run(&[
        "wavefunction",
        "--n",
        "2",
        "--xmax-x0",
        "60",
        "--points",
        "601",
    ]));
    assert_ne!(rows[50], plain[50]);
    let norm: f64 = vals.iter().map(|v| v * v * 0.1).sum();
    assert!((norm - 1.0).abs() < 1e-3, "{norm}");

    let singular = run(&[
        "wavefunction",
        "--n",
        "2",
        "--isospectral",
        "--bigr",
        "1",
        "--xmax-x0",
        "5",
        "--points",
        "5",
    ]);
    assert_eq!(singular.status.code(), Some(2));

    let a = csv_rows(&run(&[
        "wavefunction",
        "--n",
        "1",
        "--xmax-x0",
        "2",
        "--points",
        "3",
        "--angstrom",
        "--epsilon",
        "1.05723",
    ]));
    assert_eq!(a[0], ["x_angstrom", "value"]);
    let x: f64 = a[3][0].parse().unwrap();
    assert!((x - 76.0887).abs() < 1e-3);
    assert_eq!(
        run(&[
            "wavefunction",
            "--n",
            "1",
            "--xmax-x0",
            "2",
            "--points",
            "3",
            "--angstrom"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn fit_round_trip_file() {
    let file = transitions_file(
        "# synthetic\nn_upper,n_lower,frequency_ghz\n2,1,125.628297\n3,1,148.302356\n",
    );
    let out = run(&["fit", "--input", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let r = &json(&out)["results"];
    assert!((f(&r["e0_ghz"]) - 158.4).abs() < 1e-3);
    assert!((f(&r["delta"]) - 0.0237).abs() < 1e-5);
    assert!((f(&r["shift_infinity_ghz"]) - 7.78).abs() < 0.1);

    let ls = run(&[
        "fit",
        "--input",
        file.path().to_str().unwrap(),
        "--least-squares",
    ]);
    assert!((f(&json(&ls)["results"]["delta"]) - 0.0237).abs() < 1e-5);
}

#[test]
fn fit_balmer_and_errors() {
    let balmer = transitions_file("n_upper,n_lower,frequency_ghz,weight\n2,1,119.34225,1\n3,1,141.442667,1\n4,1,149.178281,2\n");
    let out = run(&[
        "fit",
        "--input",
        balmer.path().to_str().unwrap(),
        "--least-squares",
    ]);
    assert!(out.status.success());
    assert!(f(&json(&out)["results"]["delta"]).abs() < 1e-6);
    // Three lines need the least-squares path.
    assert_eq!(
        run(&["fit", "--input", balmer.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let empty = transitions_file("");
    let out = run(&["fit", "--input", empty.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let bad = transitions_file("n_upper,n_lower,frequency_ghz\n2,1,125.6\n3,1,abc\n");
    let out = run(&["fit", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(
        run(&["fit", "--input", "/nonexistent/lines.csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn matrix_element_report() {
    let out = run(&["matrix-element", "--bra", "1", "--ket", "2", "--delta", "0"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert!((f(&doc["results"]["magnitude"]) - 1.117_40).abs() < 1e-5);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn verify_passes_and_fails_cleanly() {
    let out = run(&["verify", "--delta", "0.0237", "--nmax", "4"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    for prefix in [
        "eigenvalue_",
        "overlap_",
        "expectation_x_",
        "dipole_1_",
        "isospectral_quotient_",
    ] {
        assert!(
            checks
                .iter()
                .any(|c| c["name"].as_str().unwrap().starts_with(prefix)),
            "{prefix}"
        );
    }
    for c in checks {
        assert!(c["tolerance"].is_number());
    }

    let hydrogenic = json(&run(&["verify", "--delta", "0", "--nmax", "2"]));
    assert!(hydrogenic["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "virial_n2" && c["pass"] == true));

    assert_eq!(
        run(&["verify", "--delta", "0.0237", "--bigr", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--delta", "0.1", "--nmax", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "wavefunction",
        "--n",
        "3",
        "--delta",
        "0.0237",
        "--xmax-x0",
        "40",
        "--points",
        "50",
        "--isospectral",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
