use std::process::{Command, Output};

fn cuspmass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspmass")).args(args).env_remove("CUSPMASS_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_values(text: &str, quantity: &str) -> Vec<f64> {
    text.lines()
        .skip(2)
        .filter(|l| l.split(',').nth(1) == Some(quantity))
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn petersson_check_prints_json_lines() {
    let o = cuspmass(&["check", "--identity", "petersson", "--k", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    for l in &lines {
        assert_eq!(l["identity"], "petersson");
        assert_eq!(l["passed"], true);
        assert!(l["abs_residual"].as_f64().unwrap() <= 1e-6);
    }
}

#[test]
fn l2_norm_row() {
    let o = cuspmass(&["norms", "--k", "12", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), format!("# cuspmass v{}", cuspmass::VERSION));
    assert_eq!(lines.next().unwrap(), "k,quantity,method,value,est_error,params_json");
    let v = csv_values(&text, "lp_norm");
    assert_eq!(v.len(), 1);
    assert!((v[0] - 1.0).abs() <= 1e-3);
}

#[test]
fn usage_errors_exit_with_two() {
    let o = cuspmass(&["norms", "--k", "12", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(cuspmass(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cuspmass(&["norms", "--k", "13"]).status.code(), Some(2));
    assert_eq!(cuspmass(&["cusp", "--k", "12", "--y0", "-1"]).status.code(), Some(2));
    assert_eq!(cuspmass(&["check", "--identity", "nonsense"]).status.code(), Some(2));
    assert_eq!(cuspmass(&["check", "--identity", "lemma33", "--tolerance", "nonsense=1"]).status.code(), Some(2));
    assert_eq!(cuspmass(&["--help"]).status.code(), Some(0));
}

#[test]
fn failed_check_exits_with_one() {
    let o = cuspmass(&["check", "--identity", "petersson", "--tolerance", "petersson=1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.contains("\"passed\":false")));
}

#[test]
fn config_file_supplies_flags_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# weights\nk = 12\np=2\nthreads = 2\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = cuspmass(&["norms", "--config", cfg]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(stdout(&a), stdout(&cuspmass(&["norms", "--k", "12", "--p", "2"])));
    // flags override the file
    let b = cuspmass(&["--config", cfg, "cusp", "--y0", "10"]);
    assert_eq!(b.status.code(), Some(2));
    let c = cuspmass(&["shifted", "--config", cfg, "--k", "16"]);
    assert_eq!(c.status.code(), Some(2), "p is not a shifted flag");
    let good = dir.path().join("shifted.cfg");
    std::fs::write(&good, "k=12\nl_max=5\nn=5\n").unwrap();
    let d = cuspmass(&["shifted", "--config", good.to_str().unwrap(), "--k", "16"]);
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).lines().skip(2).all(|l| l.starts_with("16,")));
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "k=12\nwobble=3\n").unwrap();
    let e = cuspmass(&["norms", "--config", bad.to_str().unwrap()]);
    assert_eq!(e.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&e.stderr).contains("wobble"));
}

#[test]
fn thread_count_does_not_change_output() {
    let one = cuspmass(&["--threads", "1", "cusp", "--k", "12", "--y0", "2"]);
    let many = cuspmass(&["--threads", "4", "cusp", "--k", "12", "--y0", "2"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let p = csv_values(&stdout(&one), "cusp_integral_p");
    assert!((p[0] - p[1]).abs() <= 1e-6 * p[0]);
}

#[test]
fn cache_directory_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eigen.csv");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cuspmass"))
            .args(["eigen", "--k", "24", "--n", "300", "-o", out.to_str().unwrap()])
            .env("CUSPMASS_CACHE_DIR", dir.path().join("cache"))
            .output()
            .unwrap()
    };
    assert_eq!(run().status.code(), Some(0));
    assert!(dir.path().join("cache").join("eigen_k24.tsv").exists());
    let first = std::fs::read(&out).unwrap();
    assert_eq!(run().status.code(), Some(0));
    assert_eq!(first, std::fs::read(&out).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert_eq!(csv_values(&text, "lambda_2").len(), 2);
    assert!(csv_values(&text, "hecke_residual").iter().all(|r| *r <= 1e-10));
}

#[test]
fn statphase_table() {
    let o = cuspmass(&["statphase", "--lambda", "100", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# cuspmass v"));
    assert_eq!(text.lines().count(), 2 + 3);
}

#[test]
fn shifted_sums_start_at_one() {
    let o = cuspmass(&["shifted", "--k", "12", "--l-max", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = csv_values(&stdout(&o), "shifted_t");
    assert!((t[0] - 1.0).abs() < 1e-15);
}
