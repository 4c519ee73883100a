use std::fs;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sechbloch"));
    c.env("NO_COLOR", "1");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Parses CSV output into a header and rows of strings.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn winf_examples() {
    let v = json(&["winf", "--alpha", "1", "--gammaT", "0.3333333333333333"]);
    assert!((v["w_exact"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let v = json(&["winf", "--alpha", "2", "--gammaT", "0"]);
    assert_eq!(v["w_exact"].as_f64().unwrap(), -1.0);
    let v = json(&["winf", "--alpha", "0.5", "--gammaT", "1"]);
    assert!((v["w_exact"].as_f64().unwrap() + 2.0 / std::f64::consts::PI).abs() < 1e-11);
    assert_eq!(v["gamma"].as_f64().unwrap(), 0.5);
    for key in [
        "w_weak_dephasing",
        "weak_dephasing_hint",
        "w_strong_dephasing",
        "w_large_area",
        "large_area_hint",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn seventeen_digits_round_trip() {
    let o = run(&["--precision", "17", "winf", "--alpha", "1.3", "--gammaT", "0.7"]);
    let (header, rows) = csv_rows(&stdout(&o));
    let col = header.iter().position(|h| h == "w_exact").unwrap();
    let printed: f64 = rows[0][col].parse().unwrap();
    let want = sechbloch::w_infinity(sechbloch::DimensionlessParams64::new(1.3, 0.35).unwrap());
    assert_eq!(printed.to_bits(), want.to_bits());
}

#[test]
fn csv_is_plain() {
    let o = run(&["winf", "--alpha", "1", "--gammaT", "0"]);
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("alpha,GammaT,gamma,w_exact,"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["winf", "--alpha", "-1", "--gammaT", "0"][..],
        &["winf", "--alpha", "1"],
        &["figure", "fig9"],
        &["--precision", "5", "winf", "--alpha", "1", "--gammaT", "0"],
        &["--precision", "18", "winf", "--alpha", "1", "--gammaT", "0"],
        &["--format", "xml", "winf", "--alpha", "1", "--gammaT", "0"],
        &["integrate", "--alpha", "1", "--gammaT", "0", "--rel-tol", "0"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn integrator_failure_exits_3_with_last_time() {
    let o = run(&["integrate", "--alpha", "1", "--gammaT", "1", "--max-steps", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("last good t/T"), "{err}");
}

fn summary(args: &[&str]) -> serde_json::Map<String, Value> {
    let mut full = vec!["integrate"];
    full.extend_from_slice(args);
    let v = json(&full);
    let rows = v.as_array().unwrap();
    let last = rows.last().unwrap().as_object().unwrap().clone();
    assert_eq!(last["row"], "summary");
    last
}

#[test]
fn integrate_examples() {
    let s = summary(&["--alpha", "1", "--gammaT", "0"]);
    assert!(s["abs_diff"].as_f64().unwrap() <= 1e-8);
    let s = summary(&["--alpha", "3", "--gammaT", "1"]);
    assert!(s["w"].as_f64().unwrap().abs() <= 1e-7);
    let s = summary(&["--alpha", "1", "--gammaT", "4"]);
    let band = -(-0.5f64).exp();
    assert!((s["w"].as_f64().unwrap() / band - 1.0).abs() <= 0.02);
}

#[test]
fn integrate_flags_shape_output() {
    let o = run(&[
        "integrate",
        "--alpha",
        "1",
        "--gammaT",
        "0.2",
        "--points",
        "11",
        "--window-L",
        "20",
        "--abs-tol",
        "1e-13",
    ]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["row", "t_over_T", "u", "v", "w", "w_exact", "abs_diff"]);
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), -20.0);
    assert_eq!(rows[10][1].parse::<f64>().unwrap(), 20.0);
    assert!(rows[0][5].is_empty());
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("fig.json");
    fs::write(
        &cfg,
        format!(
            "# figure settings\nformat = json\npoints = 320\noutput = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "figure", "fig1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 320);

    let written = dir.path().join("override.csv");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
        "--output",
        written.to_str().unwrap(),
        "figure",
        "fig1",
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&written).unwrap();
    assert!(text.starts_with("GammaT,w_alpha_0.5,"));
    assert_eq!(text.lines().count(), 321);
}

#[test]
fn bad_config_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "colour = blue\n").unwrap();
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "winf",
        "--alpha",
        "1",
        "--gammaT",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure_two_extrema_and_figure_one_rows() {
    let o = run(&["--precision", "17", "figure", "fig2"]);
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header[0], "area_over_pi");
    assert!(rows.len() >= 600);
    let col = header.iter().position(|h| h == "w_GammaT_2").unwrap();
    let x: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r[col].parse().unwrap()).collect();
    let ext = sechbloch::sweep::figures::sampled_extrema(&x, &y);
    let maxima: Vec<f64> = ext.iter().filter(|e| e.2).map(|e| e.0).collect();
    let minima: Vec<f64> = ext.iter().filter(|e| !e.2).map(|e| e.0).collect();
    // located against 40-digit evaluations of the exact curve
    for (got, want) in maxima.iter().zip([1.889, 3.948, 5.966]) {
        assert!((got - want).abs() <= 0.01, "max {got} vs {want}");
    }
    for (got, want) in minima.iter().zip([2.930, 4.959, 6.971]) {
        assert!((got - want).abs() <= 0.01, "min {got} vs {want}");
    }

    let o = run(&["--precision", "17", "figure", "fig1"]);
    let (header, rows) = csv_rows(&stdout(&o));
    assert!(rows.len() >= 300);
    let col = header.iter().position(|h| h == "w_alpha_1").unwrap();
    for r in &rows {
        let gt: f64 = r[0].parse().unwrap();
        let w: f64 = r[col].parse().unwrap();
        assert!((w - (1.0 - gt) / (1.0 + gt)).abs() <= 1e-12, "GammaT={gt}");
    }
}

#[test]
fn verify_fast_passes_quickly() {
    let started = Instant::now();
    let o = run(&["verify", "fast"]);
    let took = started.elapsed();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(took < Duration::from_secs(10), "{took:?}");
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(!err.contains('\x1b'), "NO_COLOR ignored");
    let (_, rows) = csv_rows(&stdout(&o));
    assert!(rows.iter().all(|r| r[3] == "true"));
}

#[test]
fn sign_mutant_fails_verify() {
    let o = run(&["verify", "fast", "--mutate-sign"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_full_report_lists_every_check() {
    let o = run(&["--format", "json", "verify", "full"]);
    // the weak-order check sits outside its band for half-integer α, so only
    // the report contents are asserted
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    for n in [
        "large_area_envelope_exponent",
        "weak_dephasing_error_order",
        "strong_dephasing_asymptote",
        "time_dependent_inversion",
    ] {
        assert!(names.contains(&n), "{n}");
    }
}
