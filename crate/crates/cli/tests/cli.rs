use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_harmodisk"));
    c.env_remove("HARMODISK_CONFIG");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn field(stdout: &str, key: &str) -> f64 {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in {stdout}"))
        .parse()
        .unwrap()
}

fn spectrum(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn solve_cosine() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["solve", "--boundary-expr", "cos1", "--R", "1", "--n", "8"]);
    let s = spectrum(d.path(), "spectrum.json");
    let a: Vec<f64> = s["a"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    let b: Vec<f64> = s["b"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(s["n_max"], 8);
    assert_eq!(s["R"], 1.0);
    assert!((a[1] - 1.0).abs() < 1e-14);
    for (k, v) in a.iter().enumerate().filter(|(k, _)| *k != 1) {
        assert!(v.abs() < 1e-14, "a_{k} = {v}");
    }
    assert!(b.iter().all(|v| v.abs() < 1e-14));
}

#[test]
fn solve_constant_prints_center_value() {
    let d = TempDir::new().unwrap();
    let out = ok(d.path(), &["solve", "--boundary-expr", "const5", "--n", "4", "--output", "c.json"]);
    assert!((field(&out, "center_value") - 5.0).abs() < 1e-14);
    assert!((field(&out, "l1_f") - 10.0 * PI).abs() < 1e-12);
    assert_eq!(field(&out, "min_g"), 5.0);
    assert_eq!(field(&out, "max_g"), 5.0);
}

#[test]
fn solve_square_wave_file() {
    let d = TempDir::new().unwrap();
    let m = 4096;
    let mut text = String::from("theta,value\n");
    for j in 0..m {
        let t = -PI + 2.0 * PI * j as f64 / m as f64;
        let v = if t > 0.0 { 1.0 } else if t < 0.0 { -1.0 } else { 0.0 };
        text.push_str(&format!("{t},{v}\n"));
    }
    write(d.path(), "square.csv", &text);
    let out = ok(d.path(), &["solve", "--boundary", "square.csv", "--n", "5", "--M", "4096"]);
    let s = spectrum(d.path(), "spectrum.json");
    let b1 = s["b"][0].as_f64().unwrap();
    assert!((b1 - 4.0 / PI).abs() < 2e-3, "{b1}");
    assert_eq!(field(&out, "min_g"), -1.0);
}

#[test]
fn eval_values_and_derivatives() {
    let d = TempDir::new().unwrap();
    // g = x on the unit circle
    ok(d.path(), &["solve", "--boundary-expr", "cos1", "--n", "6"]);
    write(d.path(), "pts.csv", "x,y\n0.3,0.4\n-0.9,0.1\n0,-1\n");
    let out = ok(d.path(), &["eval", "--spectrum", "spectrum.json", "--points", "pts.csv"]);
    assert!(out.starts_with("x,y,value\n"));
    let rows = csv_rows(&out);
    assert!((rows[0][2].parse::<f64>().unwrap() - 0.3).abs() < 1e-14);
    assert!((rows[1][2].parse::<f64>().unwrap() + 0.9).abs() < 1e-14);

    let out = ok(d.path(), &["eval", "--spectrum", "spectrum.json", "--points", "pts.csv", "--deriv", "1,0"]);
    assert!(out.starts_with("x,y,d_value\n"));
    for row in csv_rows(&out) {
        assert!((row[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-13);
    }
}

#[test]
fn eval_flags_out_of_domain_points_and_continues() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["solve", "--boundary-expr", "cos1", "--n", "6"]);
    write(d.path(), "pts.csv", "x,y\n2,0\n0.5,0\n");
    let out = run(d.path(), &["eval", "--spectrum", "spectrum.json", "--points", "pts.csv", "--output", "v.csv"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside"));
    let rows = csv_rows(&fs::read_to_string(d.path().join("v.csv")).unwrap());
    assert_eq!(rows[0][2], "NaN");
    assert!((rows[1][2].parse::<f64>().unwrap() - 0.5).abs() < 1e-14);
}

#[test]
fn eval_compare_oracle() {
    let d = TempDir::new().unwrap();
    // g = x² − y² restricted to the unit circle is cos 2θ
    ok(d.path(), &["solve", "--boundary-expr", "cos2", "--n", "8"]);
    write(d.path(), "pts.csv", "x,y\n0.6,0.5\n");
    let out = ok(
        d.path(),
        &["eval", "--spectrum", "spectrum.json", "--points", "pts.csv", "--compare-oracle", "--boundary-expr", "cos2"],
    );
    assert!(out.starts_with("x,y,series_value,poisson_value,abs_diff\n"));
    let row = &csv_rows(&out)[0];
    assert!((row[2].parse::<f64>().unwrap() - 0.11).abs() < 1e-13);
    assert!(row[4].parse::<f64>().unwrap() <= 1e-9);

    let out = run(d.path(), &["eval", "--spectrum", "spectrum.json", "--points", "pts.csv", "--compare-oracle"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_then_eval_round_trip() {
    let d = TempDir::new().unwrap();
    let out = ok(d.path(), &["solve", "--boundary-expr", "exp_cos", "--n", "16"]);
    let center = field(&out, "center_value");
    write(d.path(), "pts.csv", "x,y\n0,0\n");
    let out = ok(d.path(), &["eval", "--spectrum", "spectrum.json", "--points", "pts.csv"]);
    assert_eq!(csv_rows(&out)[0][2].parse::<f64>().unwrap(), center);
}

#[test]
fn study_columns_and_examples() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["study", "--boundary-expr", "hat", "--n", "8,16,32,64,128", "--radii", "0,1"]);
    let text = fs::read_to_string(d.path().join("study.csv")).unwrap();
    assert!(text.starts_with("n,r,measured_sup_err,bound_value,applicable,slope_estimate\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 10);
    for row in rows.iter().filter(|r| r[1] == "0") {
        assert!(row[2].parse::<f64>().unwrap() <= 1e-12);
    }
    let slope: f64 = rows.iter().find(|r| r[1] == "1").unwrap()[5].parse().unwrap();
    assert!((-1.3..=-0.85).contains(&slope), "{slope}");

    let reports: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("study_reports.json")).unwrap()).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 10);
    assert_eq!(reports[0]["kind"], "uniform_error");

    ok(d.path(), &["study", "--boundary-expr", "exp_cos", "--n", "2,4,6,8", "--radii", "1"]);
    let rows = csv_rows(&fs::read_to_string(d.path().join("study.csv")).unwrap());
    let slope: f64 = rows[0][5].parse().unwrap();
    assert!(slope <= -2.0, "{slope}");
}

#[test]
fn study_is_deterministic() {
    let d = TempDir::new().unwrap();
    let args = |out: &'static str, rep: &'static str| {
        vec!["study", "--boundary-expr", "abs_sin_half:0.5", "--n", "8,16,32", "--radii", "0,0.5,1", "--output", out, "--reports", rep]
    };
    ok(d.path(), &args("a.csv", "a.json"));
    ok(d.path(), &args("b.csv", "b.json"));
    assert_eq!(fs::read(d.path().join("a.csv")).unwrap(), fs::read(d.path().join("b.csv")).unwrap());
    assert_eq!(fs::read(d.path().join("a.json")).unwrap(), fs::read(d.path().join("b.json")).unwrap());
}

#[test]
fn study_needs_two_degrees() {
    let d = TempDir::new().unwrap();
    let out = run(d.path(), &["study", "--boundary-expr", "hat", "--n", "8"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn study_honours_config_file_and_flag_precedence() {
    let d = TempDir::new().unwrap();
    let cfg = write(d.path(), "cfg.toml", "gamma0 = 1.5\nangular_points = 16\n");
    let gamma_of = |extra: &[&str]| {
        let mut args = vec!["study", "--boundary-expr", "hat", "--n", "8,16", "--radii", "1"];
        args.extend_from_slice(extra);
        let out = bin().current_dir(d.path()).env("HARMODISK_CONFIG", &cfg).args(&args).output().unwrap();
        assert!(out.status.success());
        let reports: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(d.path().join("study_reports.json")).unwrap()).unwrap();
        reports[0]["inputs"]["gamma"].as_f64().unwrap()
    };
    assert_eq!(gamma_of(&[]), 1.5);
    assert_eq!(gamma_of(&["--gamma0", "2.5"]), 2.5);

    let bad = write(d.path(), "bad.toml", "gamma = 1\n");
    let out = bin().current_dir(d.path()).env("HARMODISK_CONFIG", &bad)
        .args(["solve", "--boundary-expr", "cos1", "--n", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn taylor_linear_data_has_zero_remainder() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["solve", "--boundary-expr", "cos1", "--n", "4"]);
    let out = ok(
        d.path(),
        &["taylor", "--spectrum", "spectrum.json", "--center", "0.2,-0.1", "--order", "3", "--h", "0.1,0.05", "--certificate", "cert.json"],
    );
    assert!(field(&out, "abs_diff") <= 1e-15);
    assert!(field(&out, "bound") >= 0.0);
    let cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert["certificate"]["kind"], "taylor_remainder");
}

#[test]
fn taylor_bound_factor() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["solve", "--boundary-expr", "exp_cos", "--n", "16"]);
    // center at the origin: L = 1, so h = (0.2, 0) gives κ = 0.2
    let out = ok(
        d.path(),
        &["taylor", "--spectrum", "spectrum.json", "--center", "0,0", "--order", "4", "--h", "0.2,0", "--coefficients", "t.csv"],
    );
    let cert: serde_json::Value = serde_json::from_str(&out[out.find('{').unwrap()..]).unwrap();
    let l1 = cert["certificate"]["inputs"]["l1_u_circle"].as_f64().unwrap();
    let (kappa, l) = (field(&out, "kappa"), field(&out, "L"));
    assert!((kappa - 0.2).abs() < 1e-15);
    let want = 0.0625 * l1 / (PI * l * (1.0 - kappa));
    assert!((field(&out, "bound") - want).abs() <= 1e-14 * want);
    assert!(field(&out, "abs_diff") <= field(&out, "bound"));
    let table = fs::read_to_string(d.path().join("t.csv")).unwrap();
    assert!(table.starts_with("a1,a2,coef\n"));
    assert_eq!(table.lines().count(), 1 + 10);
}

#[test]
fn taylor_region_is_enforced() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["solve", "--boundary-expr", "exp_cos", "--n", "16"]);
    let args = ["taylor", "--spectrum", "spectrum.json", "--center", "0,0", "--h", "0.34,0"];
    let out = run(d.path(), &args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kappa"));

    let mut forced = args.to_vec();
    forced.push("--force");
    let out = ok(d.path(), &forced);
    assert!(out.contains("bound: none"));
    assert!(out.contains("\"certificate\": null"));
}

#[test]
fn exit_codes() {
    let d = TempDir::new().unwrap();
    let out = run(d.path(), &["solve", "--boundary", "missing.csv", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(d.path(), &["solve", "--boundary-expr", "cos1", "--n", "10", "--M", "8"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(d.path(), &["solve", "--boundary-expr", "nope", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(d.path(), &["solve", "--boundary-expr", "cos1", "--boundary", "x.csv", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(d.path(), &["eval", "--spectrum", "missing.json", "--points", "p.csv"]);
    assert_eq!(out.status.code(), Some(3));
}
