use std::path::PathBuf;

use netrel::cli::run_with_io;
use netrel::graph::parse_edge_list;
use netrel::lifetime::{lifetime_integral, lifetime_threshold_crossing, EdgeReliabilityProfile, ReliabilityCurve};
use netrel::AssessmentConfig;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["netrel"];
    full.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_io(&full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn exact_k4() {
    let v = run_json(&["exact", "--graph", &data("k4.edges"), "--p", "0.5"]);
    assert_eq!(v["reliability"].as_f64().unwrap(), 0.59375);
    assert_eq!(v["f_coefficients"], serde_json::json!([1, 6, 15, 16, 0, 0, 0]));
    let f = run_json(&["exact", "--graph", &data("k4.edges"), "--probs", "[0.5,0.5,0.5,0.5,0.5,0.5]", "--method", "factor"]);
    assert!((f["reliability"].as_f64().unwrap() - 0.59375).abs() < 1e-15);
}

#[test]
fn threshold_poisson_and_five_node() {
    let v = run_json(&["threshold", "--dist", r#"{"kind":"poisson","lambda":4}"#]);
    assert!((v["p_c"].as_f64().unwrap() - 0.25).abs() < 1e-15);
    let v = run_json(&["threshold", "--graph", &data("five_node.edges")]);
    assert!((v["p_c"].as_f64().unwrap() - 0.421053).abs() < 1e-6);
    assert_eq!(v["m_c"], 3);
}

#[test]
fn lifetime_five_node_matches_library() {
    let v = run_json(&[
        "lifetime", "--graph", &data("five_node.edges"), "--rates", &data("five_node.rates"), "--pc-rule", "value:0.421053",
    ]);
    let rates = [0.0379, 0.8795, 0.7818, 0.6949, 0.6841, 0.0732, 0.1629, 0.01045];
    let profile = EdgeReliabilityProfile::exponential_rates(&rates).unwrap();
    let config = AssessmentConfig::new(8, 0.421053).unwrap();
    let want = lifetime_threshold_crossing(&profile, &config).unwrap().time;
    assert_eq!(v["lifetime_crossing"].as_f64().unwrap(), want);
    assert_eq!(v["m_c"], 3);
    assert!(v["lifetime_integral"].as_f64().unwrap() > 0.0);
    assert!(v["rel_c_at_T"].as_f64().is_some());
}

#[test]
fn every_json_output_carries_reproduction_metadata() {
    let k4 = data("k4.edges");
    let fig = data("five_node.edges");
    let rates = data("five_node.rates");
    let runs: Vec<Vec<&str>> = vec![
        vec!["exact", "--graph", &k4, "--p", "0.3"],
        vec!["threshold", "--dist", r#"{"kind":"zeta","gamma":3.2}"#],
        vec!["assess", "--graph", &fig, "--rates", &rates, "--time", "2"],
        vec!["curve", "--graph", &fig, "--rates", &rates, "--format", "json"],
        vec!["lifetime", "--edges", "250", "--shared-rate", "0.25", "--pc-rule", "value:0.43166"],
        vec!["simulate", "--graph", &k4, "--p", "0.5", "--trials", "1000", "--seed", "3"],
        vec!["sweep", "--graph", &fig, "--trials", "3", "--fractions", "0:1:0.25"],
    ];
    for args in runs {
        let v = run_json(&args);
        for key in ["schema_version", "seed", "threshold_rule", "m_c"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        if matches!(args[0], "simulate" | "sweep") {
            assert!(v["seed"].is_u64(), "{args:?}");
            assert!(v["rng"].is_string());
        }
        if matches!(args[0], "assess" | "curve" | "lifetime") {
            assert!(v["m_c"].is_u64() && v["threshold_rule"].is_string(), "{args:?}");
        }
    }
}

#[test]
fn assess_reports_all_fields() {
    let v = run_json(&["assess", "--probs", "[0.9,0.5,0.2,0.7]", "--pc-rule", "value:0.5"]);
    assert_eq!(v["m_c"], 2);
    for key in ["p_c", "rel_c_exact", "rel_c_poisson", "mu", "le_cam_bound"] {
        assert!(v[key].is_f64(), "{key}");
    }
    assert!((v["mu"].as_f64().unwrap() - 2.3).abs() < 1e-12);
}

#[test]
fn curve_csv_reintegrates_to_the_json_integral() {
    let args = ["curve", "--graph", &data("five_node.edges"), "--rates", &data("five_node.rates"), "--pc-rule", "value:0.421053"];
    let (code, csv, _) = run(&args);
    assert_eq!(code, 0);
    assert!(csv.starts_with("t,rel_c\n") && !csv.contains('\r'));
    let curve = ReliabilityCurve::from_csv(&csv).unwrap();
    assert_eq!(curve.len(), 151);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v = run_json(&json_args);
    let reintegrated = lifetime_integral(&curve, 1e-6).unwrap().value;
    assert!((reintegrated - v["lifetime_integral"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn scan_gamma_emits_the_zeta_threshold_curve() {
    let (code, out, _) = run(&["threshold", "--dist", "zeta", "--scan-gamma", "3.05:4:0.05"]);
    assert_eq!(code, 0);
    let rows: Vec<(f64, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.windows(2).all(|w| w[1].1 > w[0].1));
}

#[test]
fn scenario_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(data("five_node.edges"), dir.path().join("g.edges")).unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, r#"{"graph":{"edge_list":"g.edges"},"shared_rate":0.3}"#).unwrap();
    let v = run_json(&["lifetime", "--scenario", path.to_str().unwrap()]);
    assert_eq!(v["threshold_rule"], "moment");
    assert_eq!(v["scenario"]["grid"], serde_json::json!({"start": 0.0, "end": 15.0, "step": 0.1}));
    assert_eq!(v["scenario"]["output"], "json");
    assert!((v["p_c"].as_f64().unwrap() - 8.0 / 19.0).abs() < 1e-15);

    let (code, csv, _) = run(&["curve", "--scenario", &data("internet.json")]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("t,rel_c\n"));

    std::fs::write(&path, r#"{"graph":{"edge_list":"g.edges"},"shared_rate":0.3,"threshold":"value:1.5"}"#).unwrap();
    let (code, _, err) = run(&["lifetime", "--scenario", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("threshold"), "{err}");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("k4.json");
    let (code, out, _) = run(&["exact", "--graph", &data("k4.edges"), "--p", "0.5", "--out", target.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["reliability"].as_f64().unwrap(), 0.59375);
}

#[test]
fn generate_and_simulate_are_reproducible() {
    let args = ["generate", "--dist", r#"{"kind":"poisson","lambda":3}"#, "--nodes", "300", "--seed", "9"];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, run(&args).1);
    let g = parse_edge_list(&a).unwrap();
    assert!(g.graph.edge_count() > 300);
    let (_, b, _) = run(&["generate", "--model", "binomial", "--nodes", "30", "--p", "0.2", "--seed", "1"]);
    assert!(parse_edge_list(&b).is_ok());

    let sim = ["simulate", "--graph", &data("k4.edges"), "--p", "0.5", "--trials", "5000", "--seed", "4"];
    assert_eq!(run(&sim).1, run(&sim).1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["exact", "--graph", &data("k4.edges")]).0, 2);
    assert_eq!(run(&["exact", "--graph", &data("k4.edges"), "--p", "2"]).0, 2);
    assert_eq!(run(&["curve", "--edges", "10", "--pc-rule", "moment", "--shared-rate", "1"]).0, 2);

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("k8.edges");
    let k8: String = (0..8).flat_map(|u| (u + 1..8).map(move |v| format!("{u} {v}\n"))).collect();
    std::fs::write(&big, k8).unwrap();
    let (code, _, err) = run(&["exact", "--graph", big.to_str().unwrap(), "--p", "0.5"]);
    assert_eq!(code, 1, "{err}");
    assert_eq!(run(&["exact", "--graph", big.to_str().unwrap(), "--p", "0.5", "--method", "factor"]).0, 0);

    assert_eq!(run(&["threshold", "--dist", r#"{"kind":"zeta","gamma":1.5}"#]).0, 1);
    let (code, _, err) = run(&["lifetime", "--edges", "10", "--shared-rate", "0", "--pc-rule", "value:0.5"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn distribution_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poisson.json");
    std::fs::write(&path, r#"{"kind":"poisson","lambda":4}"#).unwrap();
    let v = run_json(&["threshold", "--dist", path.to_str().unwrap()]);
    assert!((v["p_c"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}
