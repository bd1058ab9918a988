use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

use tfsharp::io::{read_json, read_signal, write_json};
use tfsharp::lattice::{Grid, LatticeSignal};
use tfsharp::rihaczek::{rihaczek, PhaseSpaceSignal};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfsharp")).args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_sjostrand_case_is_bounded() {
    let v = ok_json(&["check", "--kind", "bpwm", "--p", "inf", "--q", "1", "--p1", "2", "--q1", "2", "--p2", "2", "--q2", "2"]);
    assert_eq!(v["bounded"], true);
    assert_eq!(v["failed"], serde_json::json!([]));
}

#[test]
fn check_brwf_small_p_fails_sum_condition() {
    let v = ok_json(&["check", "--kind", "brwf", "--m", "1", "--p", "1", "--q", "1", "--pj", "2,2", "--qj", "2,2"]);
    assert_eq!(v["bounded"], false);
    let failed: Vec<&str> = v["failed"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(failed.contains(&"cd1"), "{failed:?}");
}

#[test]
fn unbounded_verdict_still_exits_zero() {
    let out = run(&["check", "--kind", "conv", "--q", "1", "--qj", "2,2"]);
    assert!(out.status.success());
}

#[test]
fn missing_flag_is_a_usage_error() {
    let out = run(&["check", "--kind", "bpwm", "--p", "inf"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage"), "{err}");
    assert!(err.contains("--q"), "{err}");
}

#[test]
fn malformed_exponent_names_the_flag() {
    let out = run(&["check", "--kind", "conv", "--q", "zero", "--qj", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--q"));
}

#[test]
fn fractions_and_decimals_agree() {
    let a = ok_json(&["check", "--kind", "conv", "--q", "4/3", "--qj", "0.5,4"]);
    let b = ok_json(&["check", "--kind", "conv", "--q", "1.3333333333", "--qj", "1/2,4"]);
    assert_eq!(a["failed"], b["failed"]);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"command": "check", "kind": "brwf", "m": 1, "p": 1, "q": 1, "pj": [2, 2], "qj": ["2", "2"]}"#)
        .unwrap();
    let from_file = ok_json(&["--config", path_str(&cfg)]);
    assert_eq!(from_file["bounded"], false);
    let overridden = ok_json(&["--config", path_str(&cfg), "check", "--p", "2", "--q", "2"]);
    assert_eq!(overridden["bounded"], true, "{overridden}");

    fs::write(&cfg, r#"{"command": "check", "kind": "conv", "q": 1, "qj": [2, 2], "bogus": 1}"#).unwrap();
    let out = run(&["--config", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

fn read_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn frac(s: &str) -> (i64, i64) {
    let x: f64 = s.parse().unwrap();
    ((x * 10.0).round() as i64, 10)
}

#[test]
fn diagonal_scan_matches_sharp_range() {
    let out = run(&[
        "scan", "--kind", "bpwm", "--p1", "2", "--q1", "2", "--p2", "2", "--q2", "2", "--sweep", "p=0:1:0.1",
        "--sweep2", "q=0:1:1/10",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let (header, rows) = read_csv(&text);
    assert_eq!(header, ["1/p", "1/q", "bounded", "failed", "boundary"]);
    assert_eq!(rows.len(), 121);
    let mut prev = (-1, -1);
    for row in &rows {
        let (rp, _) = frac(&row[0]);
        let (rq, _) = frac(&row[1]);
        assert!((rp, rq) > prev, "rows out of order");
        prev = (rp, rq);
        // 1/p >= 1/q' together with q <= 2, in tenths.
        let expected = rp >= 10 - rq && rq >= 5;
        assert_eq!(row[2] == "true", expected, "{row:?}");
        assert_eq!(row[3].is_empty(), expected, "{row:?}");
    }
}

#[test]
fn single_point_and_reversed_ranges() {
    let base = ["scan", "--kind", "conv", "--q", "1", "--qj", "2,2"];
    let one = run(&[&base[..], &["--sweep", "q=1/2"]].concat());
    assert!(one.status.success());
    assert_eq!(String::from_utf8(one.stdout).unwrap().lines().count(), 2);
    let degenerate = run(&[&base[..], &["--sweep", "q=0.5:0.5:0.1"]].concat());
    assert_eq!(String::from_utf8(degenerate.stdout).unwrap().lines().count(), 2);

    let reversed = run(&[&base[..], &["--sweep", "q=1:0:0.1"]].concat());
    assert!(!reversed.status.success());
    assert!(!String::from_utf8_lossy(&reversed.stderr).is_empty());
}

#[test]
fn scan_writes_file_with_summary() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("scan.csv");
    let v = ok_json(&["scan", "--kind", "conv", "--qj", "2,2", "--sweep", "q=0:1:0.25", "--output", path_str(&csv)]);
    assert_eq!(v["rows"], 5);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert_eq!(v["bounded"], text.lines().skip(1).filter(|l| l.split(',').nth(1) == Some("true")).count());
}

/// Direct oracle for `‖V_g δ_0‖` in `M^{2,2}` with dx = α, dξ = 1/(αN): `|V_g δ_0(x, ξ)| = α|g(−x)|`.
fn delta_norm_oracle(g: &LatticeSignal) -> f64 {
    let grid = g.grid();
    let (alpha, n) = (grid.alpha, grid.n as f64);
    let mut sum = 0.0;
    for v in g.values() {
        sum += (alpha * v.norm()).powi(2) * n * alpha / (alpha * n);
    }
    sum.sqrt()
}

#[test]
fn norm_of_stored_delta_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let grid = Grid::new(1, 16, 0.25).unwrap();
    let delta = LatticeSignal::delta(grid, &[0]);
    let signal = dir.path().join("delta.json");
    write_json(&signal, &delta).unwrap();

    let gauss = LatticeSignal::gaussian(grid, 1.0);
    let v = ok_json(&["norm", "--signal", path_str(&signal), "--space", "modulation", "--p", "2", "--q", "2"]);
    let value = v["value"].as_f64().unwrap();
    assert!((value - delta_norm_oracle(&gauss)).abs() < 1e-12, "{value}");

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let window = LatticeSignal::random(grid, &mut rng);
    let wpath = dir.path().join("window.json");
    write_json(&wpath, &window).unwrap();
    let v = ok_json(&[
        "norm", "--signal", path_str(&signal), "--space", "modulation", "--p", "2", "--q", "2", "--window",
        path_str(&wpath),
    ]);
    assert!((v["value"].as_f64().unwrap() - delta_norm_oracle(&window)).abs() < 1e-12);

    let v = ok_json(&["norm", "--signal", path_str(&signal), "--space", "lebesgue", "--p", "1"]);
    assert!((v["value"].as_f64().unwrap() - 0.25).abs() < 1e-15);
}

#[test]
fn missing_input_file_names_the_path() {
    let out = run(&["norm", "--signal", "/nonexistent/s.json", "--space", "lebesgue", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/s.json"));
}

#[test]
fn rihaczek_identity_check_passes() {
    let v = ok_json(&["rihaczek", "--check-identity", "--m", "1", "--N", "8", "--seed", "7"]);
    assert_eq!(v["pass"], true);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-9);
    let v = ok_json(&["rihaczek", "--check-identity", "--m", "2", "--N", "4", "--trials", "3"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn written_json_reads_back() {
    let dir = TempDir::new().unwrap();
    let grid = Grid::balanced(1, 8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = LatticeSignal::random(grid, &mut rng);
    let f = LatticeSignal::random(grid, &mut rng);
    let (gp, fp, out) = (dir.path().join("g.json"), dir.path().join("f.json"), dir.path().join("r.json"));
    write_json(&gp, &g).unwrap();
    write_json(&fp, &f).unwrap();
    ok_json(&["rihaczek", "--g", path_str(&gp), "--f", path_str(&fp), "--output", path_str(&out)]);

    let back: PhaseSpaceSignal = read_json(&out).unwrap();
    let direct = rihaczek(&g, &[f]).unwrap();
    assert_eq!(back.m(), 1);
    assert_eq!(back.signal().values(), direct.signal().values());
    assert_eq!(read_signal(&out).unwrap().values(), direct.signal().values());

    let v = ok_json(&["norm", "--signal", path_str(&out), "--space", "modulation", "--p", "1", "--q", "1"]);
    assert!(v["value"].as_f64().unwrap() > 0.0);

    let report = dir.path().join("k.json");
    ok_json(&["experiment", "--kind", "khinchin", "--trials", "50", "--output", path_str(&report)]);
    let k: tfsharp::experiments::KhinchinReport = read_json(&report).unwrap();
    assert_eq!(k.trials, 50);

    let star = dir.path().join("star.json");
    ok_json(&["experiment", "--kind", "star-growth", "--q", "2", "--qj", "2,2", "--output", path_str(&star)]);
    let summary: Value = read_json(&star).unwrap();
    let s: tfsharp::experiments::ScalingReport = serde_json::from_value(summary["report"].clone()).unwrap();
    assert!((s.slope - 0.5).abs() < 0.1);
    assert_eq!(summary["slope"].as_f64().unwrap(), s.slope);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let args = |name: &str| -> Vec<String> {
        ["scan", "--kind", "brwm", "--m", "1", "--p", "2", "--pj", "2,2", "--qj", "2,2", "--sweep", "q=0:1:0.05", "--output"]
            .iter()
            .map(|s| s.to_string())
            .chain([path_str(&dir.path().join(name)).to_string()])
            .collect()
    };
    for name in ["a.csv", "b.csv"] {
        let a = args(name);
        ok_json(&a.iter().map(String::as_str).collect::<Vec<_>>());
    }
    assert_eq!(fs::read(dir.path().join("a.csv")).unwrap(), fs::read(dir.path().join("b.csv")).unwrap());

    let k1 = run(&["experiment", "--kind", "khinchin", "--seed", "3", "--trials", "60"]);
    let k2 = run(&["experiment", "--kind", "khinchin", "--seed", "3", "--trials", "60"]);
    assert_eq!(k1.stdout, k2.stdout);
    let r1 = run(&["rihaczek", "--check-identity", "--seed", "11", "--trials", "2"]);
    let r2 = run(&["rihaczek", "--check-identity", "--seed", "11", "--trials", "2"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn scaling_experiment_reports_pass_flag() {
    let v = ok_json(&["experiment", "--kind", "scaling", "--tuple", "bounded-demo", "--N", "512"]);
    assert!(v.get("pass").is_some());
    assert!(v["slope"].as_f64().unwrap().abs() < 0.1);
    assert_eq!(v["predicted"], 0.0);
}
