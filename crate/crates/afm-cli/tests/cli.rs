//! End-to-end checks of the `afm` binary: reference tables, the
//! spectrum→compare round trip, determinism, and exit-status contracts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn afm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afm"))
        .args(args)
        .env_remove("AFM_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = afm(args);
    assert!(out.status.success(), "args {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("afm-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

/// Reference 4×4 funnel tables at β = 0.5, indexed [l][n]: numeric energies
/// and the set-1 closed-form line.
const FUNNEL_NUMERIC: [[f64; 4]; 4] = [
    [0.39711, 1.11714, 1.64558, 2.09628],
    [0.90598, 1.45955, 1.92580, 2.34167],
    [1.25749, 1.74247, 2.17133, 2.56288],
    [1.55457, 1.99727, 2.39917, 2.77168],
];
const FUNNEL_SET1: [[f64; 4]; 4] = [
    [0.42779, 1.16223, 1.68099, 2.12205],
    [0.88794, 1.46673, 1.93564, 2.34911],
    [1.23307, 1.73892, 2.17323, 2.56506],
    [1.52908, 1.98937, 2.39764, 2.77183],
];

#[test]
fn afm_single_level_prints_pure_oscillator_value() {
    let out =
        run_ok(&["afm", "--family", "quad-centrifugal", "--beta", "0", "--n", "0", "--l", "0"]);
    let value: f64 = out.trim().parse().expect("a bare number");
    assert!((value - 3.0).abs() < 1e-12, "got {value}");
}

#[test]
fn compare_reproduces_funnel_reference_table() {
    let out = run_ok(&[
        "compare", "--family", "funnel", "--beta", "0.5", "--nmodel", "set1", "--format", "csv",
    ]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,beta,formulation,model,n,l,numeric,approx,abs-dev,rel-dev,chi"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 16);
    for row in &rows {
        let (n, l): (usize, usize) = (row[4].parse().unwrap(), row[5].parse().unwrap());
        let numeric: f64 = row[6].parse().unwrap();
        let approx: f64 = row[7].parse().unwrap();
        assert!(
            (numeric - FUNNEL_NUMERIC[l][n]).abs() <= 1e-4,
            "numeric (n={n}, l={l}): {numeric} vs {}",
            FUNNEL_NUMERIC[l][n]
        );
        assert!(
            (approx - FUNNEL_SET1[l][n]).abs() <= 2e-4,
            "set-1 (n={n}, l={l}): {approx} vs {}",
            FUNNEL_SET1[l][n]
        );
    }
}

#[test]
fn spectrum_round_trip_preserves_chi_to_the_printed_digit() {
    let dir = scratch_dir("roundtrip");
    let saved = dir.join("numeric.csv");

    // Relative --output lands inside AFM_OUTPUT_DIR.
    let out = Command::new(env!("CARGO_BIN_EXE_afm"))
        .args([
            "spectrum",
            "--family",
            "funnel",
            "--beta",
            "0.5",
            "--format",
            "csv",
            "--output",
            "numeric.csv",
        ])
        .env("AFM_OUTPUT_DIR", &dir)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(saved.is_file(), "spectrum artifact not redirected into AFM_OUTPUT_DIR");

    let chi_line = |text: &str| -> String {
        text.lines().find(|l| l.starts_with("chi = ")).expect("a chi line").to_string()
    };
    let fused = run_ok(&["compare", "--family", "funnel", "--beta", "0.5", "--nmodel", "set1"]);
    let reused = run_ok(&[
        "compare",
        "--family",
        "funnel",
        "--beta",
        "0.5",
        "--nmodel",
        "set1",
        "--numeric-csv",
        saved.to_str().unwrap(),
    ]);
    assert_eq!(chi_line(&fused), chi_line(&reused));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args =
        ["compare", "--family", "funnel", "--beta", "0.5", "--nmodel", "set1", "--format", "json"];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn config_file_supplies_the_whole_run() {
    let dir = scratch_dir("config");
    let path = dir.join("run.json");
    std::fs::write(
        &path,
        r#"{"command": "afm", "family": "quad-centrifugal", "beta": 0, "n": 0, "l": 0}"#,
    )
    .unwrap();
    let out = run_ok(&["--config", path.to_str().unwrap()]);
    let value: f64 = out.trim().parse().unwrap();
    assert!((value - 3.0).abs() < 1e-12);

    // Flag overrides ride on the subcommand: (n=1, l=1) sits three quanta higher.
    let out = run_ok(&["afm", "--config", path.to_str().unwrap(), "--n", "1", "--l", "1"]);
    let value: f64 = out.trim().parse().unwrap();
    assert!((value - 9.0).abs() < 1e-12, "got {value}");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validation_failures_exit_two_and_name_the_field() {
    let cases: [(&[&str], &str); 5] = [
        (&["spectrum", "--family", "funnel"], "`beta`"),
        (
            &[
                "spectrum", "--family", "funnel", "--beta", "0.5", "--mass", "1", "--a", "1",
                "--b", "1",
            ],
            "mutually exclusive",
        ),
        (&["spectrum", "--family", "coulomb", "--beta", "1"], "`family`"),
        (&["spectrum", "--family", "funnel", "--beta", "0.5", "--n-max", "-1"], "`n-max`"),
        (&["fit", "--family", "anharmonic", "--beta", "1"], "beta"),
    ];
    for (args, needle) in cases {
        let out = afm(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.contains(needle), "args {args:?}: stderr {stderr:?}");
    }
}

#[test]
fn unknown_config_field_is_rejected_by_name() {
    let dir = scratch_dir("badfield");
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"command": "tables", "betta": 1}"#).unwrap();
    let out = afm(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("betta"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn downstream_failures_exit_one_with_qualified_code() {
    let out =
        afm(&["spectrum", "--family", "quad-centrifugal", "--beta", "1.2", "--sign", "minus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("falling-to-center"));
}

#[test]
fn fit_recovers_reference_curve_parameters() {
    let out =
        run_ok(&["fit", "--family", "anharmonic", "--constraints", "set1", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&out).expect("json report");
    let p3 = report["model"]["b_params"][2].as_f64().unwrap();
    let q3 = report["model"]["c_params"][2].as_f64().unwrap();
    assert!((p3 - 0.835).abs() <= 0.05, "p3 = {p3}");
    assert!((q3 - 0.445).abs() <= 0.05, "q3 = {q3}");
}

#[test]
fn tables_reports_funnel_deviations_near_reference() {
    let out = run_ok(&["tables", "--family", "funnel", "--format", "csv"]);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    let chi_set1: f64 =
        rows.iter().find(|r| r[1] == "0.5" && r[2] == "set1").expect("set1 row at beta 0.5")[3]
            .parse()
            .unwrap();
    assert!((chi_set1 - 4.2e-4).abs() <= 0.1 * 4.2e-4, "chi = {chi_set1}");
}
