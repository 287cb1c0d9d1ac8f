use std::path::Path;
use std::process::{Command, Output};

use qvp_core::bethe::{compare_systems, parse_equation, saddle_hilb, SaddleSystem};
use qvp_core::symbolic::{parse_ratfun, Var};
use serde_json::Value;

fn qvp(args: &[&str]) -> Output {
    qvp_env(args, &[])
}

fn qvp_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qvp"));
    c.args(args).env_remove("QVP_THREADS").env_remove("QVP_CACHE_DIR");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("qvp runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn payload(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).expect("json output");
    v["payload"].clone()
}

#[test]
fn hilb_one_box_default_series() {
    let p = payload(&qvp(&["vertex", "--family", "hilb", "--n", "1"]));
    assert_eq!(p["family"], "hilb");
    assert_eq!(p["min_degree"], 0);
    assert_eq!(p["fixed_point"], "all");
    let cs = p["coefficients"].as_array().unwrap();
    assert_eq!(cs.len(), 4);
    // c_d = −(−1/2)^d / (d! ħ^d (h1 + h2))
    let expected = ["-1/(h1+h2)", "1/(2*hbar*(h1+h2))", "-1/(8*hbar^2*(h1+h2))", "1/(48*hbar^3*(h1+h2))"];
    for (d, (c, e)) in cs.iter().zip(expected).enumerate() {
        assert_eq!(c["degree"], d as i64);
        assert_eq!(parse_ratfun(c["value"].as_str().unwrap()).unwrap(), parse_ratfun(e).unwrap(), "degree {d}");
    }
}

#[test]
fn oracles_pass() {
    let g = payload(&qvp(&["vertex", "--family", "hilb", "--n", "1", "--oracle", "gamma"]));
    assert_eq!(g["oracle"]["name"], "gamma");
    assert_eq!(g["oracle"]["passed"], true);
    let m = payload(&qvp(&["vertex", "--family", "hilb", "--n", "2", "--sigma", "2,-1,1", "--oracle", "mb"]));
    assert_eq!(m["oracle"]["passed"], true);
    let t = payload(&qvp(&["vertex", "--family", "hilb", "--n", "2", "--tau", "p1^2-p2", "--oracle", "gamma"]));
    assert_eq!(t["oracle"]["passed"], true);
    let mass = payload(&qvp(&["vertex", "--family", "hilb", "--n", "2", "--mass", "--oracle", "gamma"]));
    assert_eq!(mass["oracle"]["passed"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&qvp(&["vertex", "--family", "hilb", "--n", "1", "--sigma", "1,1,1"])), 2);
    assert_eq!(code(&qvp(&["vertex", "--family", "hilb"])), 2);
    assert_eq!(code(&qvp(&["vertex", "--family", "hilb", "--n", "2", "--fixed-point", "7"])), 2);
    assert_eq!(code(&qvp(&["vertex", "--family", "conifold", "--m", "1", "--v0", "1", "--v1", "1", "--mass"])), 2);
    assert_eq!(code(&qvp(&["vertex", "--family", "conifold", "--m", "1", "--v0", "1", "--v1", "0", "--oracle", "gamma"])), 2);
    assert_eq!(code(&qvp(&["check", "--suite", "nope"])), 2);
    assert_eq!(code(&qvp(&["frobnicate"])), 2);
    assert_eq!(code(&qvp(&["bethe", "solve", "--family", "hilb", "--n", "1", "--h1", "0.3", "--h2", "0.7"])), 2);
}

#[test]
fn enumeration_counts() {
    let pp = |n: &str| payload(&qvp(&["enum", "pp", "--n", n]))["count"].as_u64().unwrap();
    // plane partitions: 1, 3, 6, 13, 24
    assert_eq!([pp("1"), pp("2"), pp("3"), pp("4"), pp("5")], [1, 3, 6, 13, 24]);
    let spin = payload(&qvp(&["enum", "spin", "--N", "3", "--n", "2", "--k", "1"]));
    assert_eq!(spin["count"], 3);
    assert_eq!(spin["fixed_points"].as_array().unwrap().len(), 3);
    let pyr = payload(&qvp(&["enum", "pyramid", "--m", "1", "--v0", "0", "--v1", "1"]));
    assert_eq!(pyr["count"], 1);
    let text = qvp(&["enum", "pp", "--n", "4", "--format", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap(), "13\n");
}

#[test]
fn check_gamma_suite_passes() {
    let o = qvp(&["check", "--suite", "gamma", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.starts_with("[PASS]")), "{out}");
}

fn parse_system(text: &str) -> SaddleSystem {
    let mut eqs = Vec::new();
    for line in text.lines().filter(|l| l.starts_with('[')) {
        let (var, rest) = line[1..].split_once("] ").unwrap();
        let v: Var = var.parse().unwrap();
        eqs.push(parse_equation(v, rest).unwrap());
    }
    SaddleSystem { name: String::new(), equations: eqs }
}

#[test]
fn bethe_derive_and_compare() {
    let o = qvp(&["bethe", "derive", "--family", "hilb", "--n", "2", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let derived = parse_system(&String::from_utf8(o.stdout).unwrap());
    assert!(compare_systems(&derived, &saddle_hilb(2, false)).unwrap());
    for args in [
        vec!["--family", "hilb", "--n", "3"],
        vec!["--family", "hilb", "--n", "2", "--mass"],
        vec!["--family", "spinchain", "--N", "2", "--n", "2", "--k", "2"],
    ] {
        let mut a = vec!["bethe", "compare"];
        a.extend(args);
        assert_eq!(payload(&qvp(&a))["equal"], true, "{a:?}");
    }
    // the conifold closed form is not the literal derivation output
    let c = qvp(&["bethe", "compare", "--family", "conifold", "--m", "1", "--v0", "1", "--v1", "1"]);
    assert_eq!(code(&c), 4);
}

#[test]
fn bethe_solve_hilb_one_box() {
    let p = payload(&qvp(&["bethe", "solve", "--family", "hilb", "--n", "1", "--z", "0.1", "--h1", "0.3", "--h2", "0.7"]));
    let roots = p["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    let s = &roots[0]["s"][0];
    assert!((s[0].as_f64().unwrap() - 10.0).abs() < 1e-9);
    assert!(s[1].as_f64().unwrap().abs() < 1e-9);
    assert!(roots[0]["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn bethe_solve_spin_chain_quadratic() {
    let o = qvp(&[
        "bethe", "solve", "--family", "spinchain", "--N", "2", "--n", "1", "--k", "1", "--z", "2", "--hbar", "0.3",
        "--a", "0,1", "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("root,s1_re,s1_im,residual"));
    let mut re: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    re.sort_by(f64::total_cmp);
    // −s² + 2.2 s − 0.78 = 0
    let d = (2.2f64 * 2.2 - 4.0 * 0.78).sqrt();
    assert_eq!(re.len(), 2);
    assert!((re[0] - (2.2 - d) / 2.0).abs() < 1e-9 && (re[1] - (2.2 + d) / 2.0).abs() < 1e-9);
}

#[test]
fn no_converged_seed_exits_3() {
    let o = qvp(&[
        "bethe", "solve", "--family", "spinchain", "--N", "2", "--n", "1", "--k", "1", "--z", "2", "--hbar", "0.3",
        "--a", "0,1", "--seeds", "0",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn deterministic_across_thread_counts() {
    let args = ["vertex", "--family", "hilb", "--n", "3", "--sigma", "2,-1,1"];
    let one = payload(&qvp_env(&args, &[("QVP_THREADS", "1")]));
    let four = payload(&qvp_env(&args, &[("QVP_THREADS", "4")]));
    assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
    assert_eq!(code(&qvp_env(&args, &[("QVP_THREADS", "0")])), 2);
}

#[test]
fn payload_round_trips() {
    let o = qvp(&["vertex", "--family", "conifold", "--m", "1", "--v0", "0", "--v1", "1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = serde_json::to_string(&v["payload"]).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&again).unwrap(), text);
    let degrees: Vec<&Value> = v["payload"]["coefficients"].as_array().unwrap().iter().map(|c| &c["degree"]).collect();
    assert!(!degrees.is_empty());
    assert!(degrees.iter().all(|d| d.as_array().is_some_and(|a| a.len() == 2)));
}

#[test]
fn csv_series() {
    let o = qvp(&["vertex", "--family", "hilb", "--n", "1", "--max-degree", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree,value");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,"));
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.json", r#"{"family": "hilb", "n": 2, "sigma": [2, -1, 1], "max_degree": 1}"#);
    let from_file = payload(&qvp(&["vertex", "--config", &cfg]));
    assert_eq!(from_file["params"]["n"], 2);
    assert_eq!(from_file["params"]["sigma"], serde_json::json!([2, -1, 1]));
    assert_eq!(from_file["params"]["max_degree"], 1);
    let overridden = payload(&qvp(&["vertex", "--config", &cfg, "--n", "1"]));
    assert_eq!(overridden["params"]["n"], 1);
    assert_eq!(overridden["params"]["max_degree"], 1);
    let bad = write(dir.path(), "bad.json", "[1, 2]");
    assert_eq!(code(&qvp(&["vertex", "--config", &bad])), 2);
}

#[test]
fn cache_hit_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    let args = ["enum", "pyramid", "--m", "2", "--v0", "2", "--v1", "2"];
    let cold = payload(&qvp(&args));
    let mut with_cache = args.to_vec();
    with_cache.extend(["--cache-dir", &d]);
    let first = payload(&qvp(&with_cache));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = payload(&qvp(&with_cache));
    assert_eq!(cold, first);
    assert_eq!(first, second);
    // a corrupt entry is recomputed
    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, "not json").unwrap();
    assert_eq!(payload(&qvp(&with_cache)), cold);
    let env_dir = payload(&qvp_env(&args, &[("QVP_CACHE_DIR", &d)]));
    assert_eq!(env_dir, cold);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pp.csv");
    let o = qvp(&["enum", "pp", "--n", "2", "--format", "csv", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 4);
}
