use std::process::{Command, Output};

const BB: &str = r#"{"model":"beta-binomial","params":{"n":10,"alpha":1,"beta":1}}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gibbs-spectra")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bounds_csv_has_one_row_per_step() {
    let o = run(&["--model", BB, "bounds", "--start", "10", "--steps", "1..5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn empty_range_prints_the_header_only() {
    let o = run(&["--model", BB, "bounds", "--start", "10", "--steps", "3..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn configuration_errors_exit_1() {
    assert_eq!(run(&["--model", r#"{"model":"nope","params":{}}"#, "catalog"]).status.code(), Some(1));
    assert_eq!(run(&["--model", BB, "bounds", "--start", "11", "--steps", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--model", BB, "--chain", "sideways", "catalog"]).status.code(), Some(1));
    assert_eq!(run(&["--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--model", BB, "bounds", "--start", "10", "--steps", "0..3"]).status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn continuous_verify_is_unsupported() {
    let g = r#"{"model":"gaussian","params":{"sigma2":1,"v":0,"tau2":1}}"#;
    let o = run(&["--model", g, "verify"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn injected_fault_exits_3() {
    let o = run(&["--model", BB, "verify", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eigenvalues"));
}

#[test]
fn model_verify_passes() {
    let o = run(&["--model", BB, "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn catalog_lists_exact_eigenvalues() {
    let o = run(&["--model", BB, "catalog", "--degrees", "0..2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<String>> =
        stdout(&o).lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 3);
    let beta: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(beta[0], 1.0);
    assert!((beta[1] - 10.0 / 12.0).abs() < 1e-15);
    assert!((beta[2] - 10.0 * 9.0 / (12.0 * 13.0)).abs() < 1e-15);
}

#[test]
fn catalog_stops_at_the_support_size() {
    let small = r#"{"model":"beta-binomial","params":{"n":2,"alpha":1,"beta":1}}"#;
    let o = run(&["--model", small, "catalog", "--degrees", "0..9"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn simulate_writes_traces_next_to_the_output() {
    let dir = std::env::temp_dir().join(format!("gibbs-spectra-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("hist.csv");
    let o = run(&[
        "--model", BB, "--seed", "3", "--out", out.to_str().unwrap(), "simulate", "--start", "0", "--steps", "4",
        "--reps", "20", "--traces",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists());
    let traces = std::fs::read_to_string(dir.join("hist.csv.traces.csv")).unwrap();
    assert!(traces.lines().count() > 20);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn joint_chain_needs_a_pair() {
    let o = run(&["--model", BB, "--chain", "bivariate-k-tilde", "bounds", "--start", "10", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["--model", BB, "--chain", "bivariate-k-tilde", "bounds", "--start", "10;0.5", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_output_parses() {
    let o = run(&["--model", BB, "--chain", "theta-chain", "--format", "json", "cutoff", "--start", "0", "--c", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].is_array());
}

#[test]
fn cutoff_outside_its_settings_is_a_configuration_error() {
    assert_eq!(run(&["--model", BB, "cutoff", "--start", "0", "--c", "1"]).status.code(), Some(1));
}
