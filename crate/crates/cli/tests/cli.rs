use std::f64::consts::E;
use std::path::PathBuf;
use std::process::{Command, Output};

use foxwright_core::foxwright::oracle;
use foxwright_core::Complex64;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foxwright"))
        .args(args)
        .env_remove("FW_THREADS")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn empty_params_at_one_give_e() {
    let v = json(&["fw", "eval", "--params", &path("canonical.json"), "--z", "1,0"]);
    assert!((v["value"][0].as_f64().unwrap() - E).abs() < 1e-15);
    assert_eq!(v["value"][1].as_f64().unwrap(), 0.0);
}

#[test]
fn beyond_radius_exits_2() {
    let out = run(&["fw", "eval", "--params", &path("critical.json"), "--z", "1.5,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn mittag_leffler_params_match_oracle() {
    let v = json(&["fw", "eval", "--params", &path("mittag_leffler.json"), "--z", "1,0"]);
    let expected = oracle::mittag_leffler(0.8, Complex64::new(1.5, 0.0), Complex64::new(1.0, 0.0)).unwrap();
    assert!((v["value"][0].as_f64().unwrap() - expected.re).abs() < 1e-13 * expected.re);
}

#[test]
fn negative_point_is_accepted() {
    let v = json(&["fw", "eval", "--params", &path("canonical.json"), "--z", "-1,-0.5"]);
    let expected = Complex64::new(-1.0, -0.5).exp();
    assert!((v["value"][0].as_f64().unwrap() - expected.re).abs() < 1e-15);
}

#[test]
fn bad_input_exits_1_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    std::fs::write(&file, "{\n  \"upper\": [],\n  \"lowr\": []\n}\n").unwrap();
    let out = run(&["fw", "eval", "--params", file.to_str().unwrap(), "--z", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    let out = run(&["fw", "eval", "--params", &path("canonical.json"), "--z", "1,x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn numeric_failure_exits_3() {
    let out = run(&["fw", "eval", "--params", &path("canonical.json"), "--z", "30,0", "--max-terms", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn radius_of_entire_series_is_inf() {
    let v = json(&["fw", "radius", "--params", &path("canonical.json")]);
    assert_eq!(v["radius"], "inf");
    assert_eq!(v["margin_sign"], "positive");
    let v = json(&["fw", "radius", "--params", &path("critical.json")]);
    assert_eq!(v["radius"].as_f64(), Some(1.0));
}

#[test]
fn classify_examples() {
    let v = json(&["bcfw", "classify", "--params", &path("bc_entire.json")]);
    assert_eq!(v["domain"], "EntireBC");
    assert_eq!(v["case"], "i");
    assert_eq!(v["upsilon"]["c1"].as_f64(), Some(0.0));

    let v = json(&["bcfw", "classify", "--params", &path("bc_disk1.json")]);
    assert_eq!(v["domain"], "Disk1xPlane2");
    assert_eq!(v["upsilon"]["c1"].as_f64(), Some(-1.0));
    assert!((v["v"]["c1"].as_f64().unwrap() - 0.25).abs() < 1e-15);
    assert_eq!(v["radius"]["c2"], "inf");

    let v = json(&["bcfw", "classify", "--params", &path("bc_ball.json")]);
    assert_eq!(v["domain"], "HyperbolicBall");
    assert!((v["v"]["c2"].as_f64().unwrap() - 0.25).abs() < 1e-15);
    assert!(v["boundary_abs_convergent"].is_boolean());

    let v = json(&["bcfw", "classify", "--params", &path("bc_divergent.json")]);
    assert_eq!(v["domain"], "DivergentEverywhere");
    assert_eq!(v["upsilon"]["c1"].as_f64(), Some(-3.0));
}

#[test]
fn bicomplex_mittag_leffler_values() {
    let v = json(&["bcfw", "eval", "--params", &path("bc_mittag_leffler.json"), "--z", "1,0,1,0"]);
    assert!((v["value"]["z1"][0].as_f64().unwrap() - (E - 1.0)).abs() < 1e-14);
    assert!((v["value"]["z2"][0].as_f64().unwrap() - (E - 2.0)).abs() < 1e-14);
}

#[test]
fn region_tables() {
    let csv = run_ok(&["bcfw", "region", "--params", &path("bc_entire.json"), "--steps", "5"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("z1_abs,z2_abs,inside"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(!csv.contains('\r'));

    let csv = run_ok(&["bcfw", "region", "--params", &path("bc_ball.json"), "--steps", "20", "--extent", "1,1"]);
    assert!(csv.contains("\n0.2,0.3,false\n"), "{csv}");
    assert!(csv.contains("\n0.2,0.2,true\n"));
    // the circle itself is outside
    assert!(csv.contains("\n0.25,0,false\n"));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["bcfw", "region", "--params", &path("bc_ball.json"), "--steps", "30"];
    let one = Command::new(env!("CARGO_BIN_EXE_foxwright"))
        .args(args)
        .env("FW_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_foxwright"))
        .args(args)
        .env("FW_THREADS", "4")
        .output()
        .unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_foxwright"))
        .args(args)
        .env("FW_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn canonical_coefficients_are_poisson() {
    let v = json(&["cs", "coeffs", "--model", &path("canonical.json"), "--z", "0.8,0.6"]);
    let coeffs = v["coeffs"].as_array().unwrap();
    let mut fact = 1.0;
    for (k, c) in coeffs.iter().enumerate().take(15) {
        if k > 0 {
            fact *= k as f64;
        }
        let p = c[0].as_f64().unwrap().powi(2) + c[1].as_f64().unwrap().powi(2);
        let expected = (-1.0f64).exp() / fact;
        assert!((p - expected).abs() < 1e-15, "k = {k}");
    }
    assert!(v["tail"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn bicomplex_coefficients() {
    let v = json(&["cs", "coeffs", "--model", &path("bc_model.json"), "--z", "0.5,0,0,0.5", "--k", "8"]);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 9);
    assert!(v["coeffs"][0]["z1"][0].as_f64().unwrap() > 0.0);
    let out = run(&["cs", "coeffs", "--model", &path("bc_model.json"), "--z", "0.5,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn overlap_table_has_unit_diagonal() {
    let csv = run_ok(&["cs", "overlap", "--model", &path("model.json"), "--z", "0.5,0.1", "--z", "-1,0.4"]);
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        if r[0] == r[2] && r[1] == r[3] {
            assert!((r[4] - 1.0).abs() < 1e-12 && r[5].abs() < 1e-12);
        } else {
            assert!(r[6] < 1.0);
        }
    }
}

#[test]
fn verify_passes_and_is_reproducible() {
    let csv = run_ok(&["cs", "verify", "--model", &path("canonical.json")]);
    assert!(csv.lines().skip(1).all(|l| l.contains(",true,")), "{csv}");

    run_ok(&["cs", "verify", "--model", &path("bc_model.json")]);

    let a = run_ok(&["cs", "verify", "--random", "4", "--seed", "99"]);
    let b = run_ok(&["cs", "verify", "--random", "4", "--seed", "99"]);
    assert_eq!(a, b);
}

#[test]
fn nu_values_and_dual_scheme() {
    // frozen from mpmath quadrature of ζ^E / Γ(E+1)² over [0, ∞)
    let v = json(&["nu", "eval", "--model", &path("canonical.json"), "--zeta", "1", "--dual"]);
    assert!((v["value"].as_f64().unwrap() - 2.2665345076998488).abs() < 1e-10);
    assert_eq!(v["scheme"], "gk");
    assert_eq!(v["dual"]["agree"], true);

    let v = json(&["nu", "eval", "--model", &path("canonical.json"), "--scheme", "ts", "--zeta", "2", "--zeta", "4"]);
    assert!((v[0]["value"].as_f64().unwrap() - 6.997579629175669).abs() < 1e-9);
    assert!((v[1]["value"].as_f64().unwrap() - 54.261333229427885).abs() < 1e-8);
    assert_eq!(v[1]["scheme"], "ts");
}

#[test]
fn nu_is_increasing_on_a_grid() {
    let mut args = vec!["nu".to_string(), "eval".into(), "--model".into(), path("model.json")];
    for i in 1..=10 {
        args.push("--zeta".into());
        args.push(format!("{}", i as f64 * 0.7));
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let v = json(&args);
    let values: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]), "{values:?}");
}

#[test]
fn canonical_moment_table_passes() {
    let csv = run_ok(&["measure", "check", "--model", &path("canonical.json"), "--k", "0..6"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,lhs,rhs,rel_err,pass");
    assert_eq!(lines.len(), 8);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));

    let out = run(&["measure", "check", "--model", &path("canonical.json"), "--k", "0..2", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stdout.is_empty());
}

#[test]
fn bicomplex_moment_table() {
    let v = json(&["measure", "check", "--model", &path("bc_model.json"), "--k", "0,2", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn weight_is_reported_nonnegative() {
    let csv = run_ok(&["measure", "weight", "--model", &path("mittag_leffler.json"), "--steps", "20"]);
    assert_eq!(csv.lines().count(), 21);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn manifest_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = dir.path().join("a.json");
    let m2 = dir.path().join("b.json");
    let args = |m: &PathBuf| {
        vec![
            "--manifest".to_string(),
            m.to_str().unwrap().to_string(),
            "cs".into(),
            "verify".into(),
            "--random".into(),
            "2".into(),
            "--seed".into(),
            "5".into(),
        ]
    };
    let a1 = args(&m1);
    let a2 = args(&m2);
    let o1 = run_ok(&a1.iter().map(String::as_str).collect::<Vec<_>>());
    let o2 = run_ok(&a2.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o1, o2);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(&m1).unwrap()).unwrap();
    assert_eq!(manifest["command"], "cs verify");
    assert_eq!(manifest["seed"], 5);
    assert_eq!(manifest["output_format"], "csv");
    assert_eq!(std::fs::read(&m1).unwrap(), std::fs::read(&m2).unwrap());
}

#[test]
fn selftest_passes_and_detects_tampering() {
    let out = run_ok(&["selftest"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);

    let out = run(&["selftest", "--tolerance-scale", "1e-6"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("criterion"), "{err}");
}
