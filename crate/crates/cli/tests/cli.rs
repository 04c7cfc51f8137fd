//! Expression parser, configuration files, exit codes and report layout.

use std::io::Write;

use proptest::prelude::*;
use qtwist_cli::{parse_poly_expr, run, ConfigFile, Overrides, ParseError, PresetConfig};
use qtwist_core::GaussianRational;
use qtwist_hopf::PresetParams;
use qtwist_repr::{default_names, PolyFunction, Sampler};
use serde_json::Value;

const N: usize = 3;

fn names(d: usize) -> Vec<String> {
    default_names(d)
}

fn parse(text: &str) -> Result<PolyFunction, ParseError> {
    parse_poly_expr(text, &names(2), N)
}

fn json(out: &qtwist_cli::Outcome) -> Value {
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

fn config_file(text: &str) -> tempfile_path::TempPath {
    tempfile_path::TempPath::with_contents(text)
}

/// A self-deleting file under the system temp directory.
mod tempfile_path {
    use super::Write;
    use std::path::PathBuf;
    use std::sync::atomic::{AtomicUsize, Ordering};

    pub struct TempPath(pub PathBuf);

    impl TempPath {
        pub fn with_contents(text: &str) -> Self {
            static NEXT: AtomicUsize = AtomicUsize::new(0);
            let k = NEXT.fetch_add(1, Ordering::Relaxed);
            let path = std::env::temp_dir().join(format!("qtwist-cli-test-{}-{k}.json", std::process::id()));
            std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
            Self(path)
        }

        pub fn arg(&self) -> String {
            self.0.display().to_string()
        }
    }

    impl Drop for TempPath {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

#[test]
fn parses_the_documented_examples() {
    let (x1, x2) = (PolyFunction::coordinate(2, N, 0), PolyFunction::coordinate(2, N, 1));
    let three = PolyFunction::scalar(2, N, GaussianRational::from_int(3));
    assert_eq!(parse("x1*x2 + 3").unwrap(), x1.mul(&x2).add(&three));
    assert_eq!(parse("(x1+x2)^2").unwrap(), x1.add(&x2).pow(2));
    assert_eq!(parse("x1*x2 + 3").unwrap().render(&names(2)), "x1*x2 + 3");
}

#[test]
fn unknown_coordinate_is_reported_with_position() {
    assert_eq!(parse("x1*z"), Err(ParseError::UnknownCoordinate { name: "z".into(), pos: 3 }));
    assert_eq!(parse("x1 + x3").unwrap_err().to_string(), "unknown coordinate x3 at position 5");
}

#[test]
fn syntax_errors_carry_positions() {
    for (text, pos) in [("x1 +", 4), ("(x1", 3), ("x1 ^ y", 5), ("x1 $ 2", 3), ("x1^2^3", 4), ("x1 x2", 3), ("1/x1", 2), ("1/0", 2)] {
        match parse(text) {
            Err(ParseError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn rationals_imaginary_unit_and_hbar() {
    let p = parse("3/2*x1 - i*hbar*x2^2 + (1+i)/2").unwrap();
    assert_eq!(parse_poly_expr(&p.render(&names(2)), &names(2), N).unwrap(), p);
    assert_eq!(parse("hbar^4").unwrap(), PolyFunction::zero(2, N), "truncated beyond the order");
    assert_eq!(parse("2 − x1").unwrap(), parse("2 - x1").unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), d in 1usize..=6, with_hbar in any::<bool>()) {
        let mut s = Sampler::new(seed, d, N);
        let p = if with_hbar { s.hbar_poly(3, 5) } else { s.poly(3, 5) };
        let text = p.render(&names(d));
        prop_assert_eq!(parse_poly_expr(&text, &names(d), N).unwrap(), p);
    }
}

#[test]
fn config_scalars_are_exact() {
    let file = ConfigFile::from_json(r#"{"preset": "moyal", "theta": [[0, "1/2"], [{"re": "-1/2"}, 0]], "order": 2}"#).unwrap();
    let cfg = PresetConfig::resolve(&file, &Overrides::default()).unwrap();
    let PresetParams::Moyal { theta } = &cfg.params else { panic!("moyal expected") };
    assert_eq!(theta[0][1], GaussianRational::ratio(1, 2));
    assert_eq!(theta[1][0], GaussianRational::ratio(-1, 2));
    assert_eq!((cfg.order, cfg.seed), (2, 42));
    assert!(cfg.build().is_ok());

    assert!(ConfigFile::from_json(r#"{"preset": "moyal", "theta": [[0, 0.5], [-0.5, 0]]}"#)
        .and_then(|f| PresetConfig::resolve(&f, &Overrides::default()))
        .is_err());
    assert!(ConfigFile::from_json(r#"{"preset": "moyal", "colour": 1}"#).is_err());
}

#[test]
fn overrides_win_over_the_file() {
    let file = ConfigFile::from_json(r#"{"preset": "rflux", "order": 2, "seed": 5}"#).unwrap();
    let over = Overrides { preset: None, order: Some(1), seed: Some(9) };
    let cfg = PresetConfig::resolve(&file, &over).unwrap();
    assert_eq!((cfg.order, cfg.seed), (1, 9));
}

#[test]
fn non_skew_theta_exits_with_config_error() {
    let f = config_file(r#"{"preset": "moyal", "n": 2, "theta": [[0, 1], [1, 0]]}"#);
    let out = run(["qtwist", "verify", "--config", &f.arg()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("skew"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn non_antisymmetric_flux_exits_with_config_error() {
    let mut r = vec![vec![vec![0; 3]; 3]; 3];
    r[0][1][2] = 1;
    let text = serde_json::json!({ "preset": "rflux", "R": r }).to_string();
    let f = config_file(&text);
    assert_eq!(run(["qtwist", "twist", "--config", &f.arg()]).code, 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(["qtwist", "verify"]).code, 2, "missing preset");
    assert_eq!(run(["qtwist", "verify", "--preset", "lattice"]).code, 2);
    assert_eq!(run(["qtwist", "frobnicate"]).code, 2);
    assert_eq!(run(["qtwist", "star", "--preset", "moyal", "--expr", "x1"]).code, 2);
    assert_eq!(run(["qtwist", "star", "--preset", "moyal", "--expr", "x1*z", "--expr", "x2"]).code, 2);
    assert_eq!(run(["qtwist", "verify", "--preset", "moyal", "--checks", "everything"]).code, 2);
    let missing = run(["qtwist", "verify", "--config", "/nonexistent/qtwist.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("/nonexistent/qtwist.json"));
    let help = run(["qtwist", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
}

#[test]
fn star_reports_product_and_commutator() {
    let out = run(["qtwist", "star", "--preset", "moyal", "--expr", "x1", "--expr", "x2"]);
    assert_eq!(out.code, 0);
    let doc = json(&out);
    assert_eq!(doc["data"]["star"], "x1*x2 + 1/2*i*hbar");
    assert_eq!(doc["data"]["commutator"], "i*hbar");
    assert_eq!(doc["overall"], "pass");
}

#[test]
fn assoc_reports_weak_residual_and_plain_defect() {
    let out = run(["qtwist", "assoc", "--preset", "rflux", "--expr", "x1", "--expr", "x2", "--expr", "x3"]);
    assert_eq!(out.code, 0);
    let doc = json(&out);
    assert_eq!(doc["data"]["weak_residual"], "0");
    assert_eq!(doc["data"]["plain_defect"], "1/2*hbar^2");
}

#[test]
fn report_layout_is_stable() {
    let out = run(["qtwist", "verify", "--preset", "classical", "--order", "2", "--seed", "3", "--checks", "axioms,quasitriangular"]);
    assert_eq!(out.code, 0);
    let doc = json(&out);
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["checks", "command", "order", "overall", "preset", "seed"]);
    assert_eq!((doc["order"].as_u64(), doc["seed"].as_u64()), (Some(2), Some(3)));
    assert!(out.stdout.starts_with("{\n  \"overall\": \"pass\""));
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["quasiantipode", "quasibialgebra", "quasitriangular", "triangular"]);
    assert!(doc["checks"][0].get("ms").is_none());

    let timed = run(["qtwist", "verify", "--preset", "classical", "--checks", "axioms", "--timing"]);
    assert!(json(&timed)["checks"][0]["ms"].is_u64());
}

#[test]
fn twist_show_selects_items() {
    let out = run(["qtwist", "twist", "--preset", "moyal", "--show", "alpha,beta"]);
    let doc = json(&out);
    let keys: Vec<&str> = doc["data"].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["alpha", "beta"]);
    assert_eq!(doc["data"]["alpha"]["text"], "(1) 1");
    assert_eq!(doc["data"]["alpha"]["terms"][0]["legs"], serde_json::json!(["1"]));
}

#[test]
fn hom_subcommand_runs_a_suite() {
    let out = run(["qtwist", "hom", "--preset", "moyal", "--suite", "bimodule", "--samples", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let doc = json(&out);
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}
