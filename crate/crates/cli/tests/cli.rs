use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_primefeas"));
    c.env_remove("PRIMEFEAS_CACHE_DIR");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn density_of_x_squared_plus_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "x^2 + 1\n");
    let (code, out, _) = run(bin().args(["density", &f, "--x-max", "100000"]));
    assert_eq!(code, 0);
    let body = primefeas_cli::report_body(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("x,pi,pi_f,sum_W,exceptional"));
    let last: Vec<u64> = lines.last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 100_000);
    assert!((last[2] as f64 / last[1] as f64 - 0.5).abs() < 0.02);
    assert!(out.contains("# config: "));
    assert!(out.contains("\"mrh_c\":2.0"));
}

#[test]
fn density_of_x_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "x\n");
    let (code, out, _) = run(bin().args(["density", &f, "--x-max", "1000", "--format", "json"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["report"]["rows"].as_array().unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last["pi"], last["pi_f"]);
    assert_eq!(last["pi"], 168);
}

#[test]
fn system_density_counts_only_resultant_primes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.txt", "x^2 + 1\nx + 1\n");
    let (code, out, _) = run(bin().args(["density", &f, "--x-max", "1000"]));
    assert_eq!(code, 0);
    assert!(primefeas_cli::report_body(&out).ends_with("1000,168,1,1,1\n"), "{out}");
}

#[test]
fn decide_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let yes = write(dir.path(), "yes.txt", "x - 1\nx^2 - 1\n");
    let no = write(dir.path(), "no.txt", "x\nx - 1\n");
    let (code, out, _) = run(bin().args(["decide", &yes, "--x-cap", "10000"]));
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("feasible,true"));
    let (code, out, _) = run(bin().args(["decide", &no, "--x-cap", "1000", "--format", "json"]));
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"]["M"], 0);
    assert_eq!(v["report"]["oracle_agrees"], true);
}

#[test]
fn malformed_input_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "x^2 + 1\nx^2 + + 1\n");
    let (code, out, err) = run(bin().args(["bounds", &f]));
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 2, column 7"), "{err}");
    let (code, _, err) = run(bin().args(["bounds", "/nonexistent/file"]));
    assert_eq!(code, 2);
    assert!(err.contains("reading"));
}

#[test]
fn ideals_rejects_non_squarefree() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "x^2 + 2*x + 1\n");
    let (code, _, err) = run(bin().args(["ideals", &f, "--x-max", "100"]));
    assert_eq!(code, 2);
    assert!(err.contains("squarefree_part"), "{err}");
}

#[test]
fn ideals_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "x^2 + 1\n");
    let (code, out, _) = run(bin().args(["ideals", &f, "--x-max", "25", "--checkpoints", "10"]));
    assert_eq!(code, 0);
    let body = primefeas_cli::report_body(&out);
    assert!(body.starts_with("x,pi_K,psi_K,theta_K,sum_W,ramified_skipped\n"));
    assert!(body.lines().last().unwrap().starts_with("25,7,"), "{body}");
}

#[test]
fn bounds_of_single_x() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", "[[1, \"1\"]]");
    let (code, out, _) = run(bin().args(["bounds", &f]));
    assert_eq!(code, 0);
    let a_f: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("a_f,"))
        .unwrap()
        .parse()
        .unwrap();
    assert!(a_f.is_finite() && a_f > 0.0);
}

#[test]
fn cache_dir_from_env_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "x^2 - 2\n");
    let env_cache = dir.path().join("env-cache");
    let (code, out, _) = run(bin()
        .env("PRIMEFEAS_CACHE_DIR", &env_cache)
        .args(["density", &f, "--x-max", "5000"]));
    assert_eq!(code, 0);
    assert!(std::fs::read_dir(&env_cache).unwrap().count() > 0);
    let flag_cache = dir.path().join("flag-cache");
    let (code, out2, _) = run(bin()
        .env("PRIMEFEAS_CACHE_DIR", &env_cache)
        .args(["density", &f, "--x-max", "5000", "--cache-dir"])
        .arg(&flag_cache));
    assert_eq!(code, 0);
    assert!(flag_cache.exists());
    assert_eq!(primefeas_cli::report_body(&out), primefeas_cli::report_body(&out2));
    // A warm cache gives the same body.
    let (_, out3, _) = run(bin().args(["density", &f, "--x-max", "5000", "--cache-dir"]).arg(&flag_cache));
    assert_eq!(primefeas_cli::report_body(&out), primefeas_cli::report_body(&out3));
}

#[test]
fn example_reports_bounds_and_sample() {
    let (code, out, _) = run(bin().args(["example", "--sample", "50", "--seed", "4"]));
    assert_eq!(code, 0);
    assert!(out.contains("robin_omega,163317"), "{out}");
    assert!(out.contains("fraction,std_error"));
}

/// Exhaustive sweep of the first 163,317 primes; takes hours.
#[test]
#[ignore]
fn example_full_mode() {
    let (code, out, _) = run(bin().args(["example", "--full", "--format", "json"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let fraction = v["report"]["fraction"].as_f64().unwrap();
    assert!((0.62..=0.71).contains(&fraction), "{fraction}");
}
