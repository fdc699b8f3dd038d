mod common;

use std::process::Command;

use common::fixture_path;
use serde_json::Value;
use spatial_milnor::cli::run;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spatial-milnor")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = bin(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn borromean_split_report() {
    let v = json(&["split", &path("borromean.sg")]);
    assert_eq!(v["schema"], "spatial-milnor-report");
    assert_eq!(v["version"], 1);
    assert_eq!(v["verdicts"]["completely_split"], false);
    assert!(v["witnesses"].as_object().is_some_and(|w| !w.is_empty()));
}

#[test]
fn whitehead_is_split() {
    let (code, out, _) = bin(&["split", &path("whitehead.sg")]);
    assert_eq!(code, 0);
    assert!(out.contains("completely split: yes"), "{out}");
}

#[test]
fn four_component_lambda_via_cli() {
    let v = json(&["--presentation", "lambda", &path("four_component_lambda.pres")]);
    for (c, want) in [("1", 3), ("2", 3), ("3", 2), ("4", 2)] {
        assert_eq!(v["lambda"][c]["relators"], want, "color {c}");
    }
}

#[test]
fn triple_commutator_isplit_via_cli() {
    let (code, out, _) = bin(&["--presentation", "isplit", &path("triple_commutator.pres"), "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("obstructed"), "{out}");
    assert!(!out.contains("inconclusive"), "{out}");
}

#[test]
fn unobstructed_isplit_is_inconclusive() {
    let (code, out, _) = bin(&["isplit", &path("hopf_unknot.sg"), "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("inconclusive"), "{out}");
}

#[test]
fn mu_json_lists_nonzero_coefficients() {
    let v = json(&["mu", &path("hopf_pos.sg")]);
    assert_eq!(v["mu_bar"]["12"], 1);
    assert_eq!(v["mu_bar"]["21"], 1);
    let v = json(&["mu", &path("borromean.sg")]);
    let mu = v["mu_bar"].as_object().unwrap();
    assert!(mu.keys().all(|k| k.len() == 3), "{mu:?}");
}

#[test]
fn json_is_deterministic() {
    for args in [["split", "borromean_theta.sg"], ["lambda", "theta_clasp.sg"], ["present", "borromean.sg"]] {
        let p = path(args[1]);
        let a = bin(&["--format", "json", args[0], &p]);
        let b = bin(&["--format", "json", "--parallel", args[0], &p]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1, "{args:?}");
    }
}

#[test]
fn low_truncation_is_flagged() {
    let v = json(&["--max-degree", "2", "lambda", &path("borromean.sg")]);
    assert_eq!(v["exact"], false);
    assert!(v["flags"].as_array().unwrap().iter().any(|f| f.as_str().unwrap().starts_with("approximate")));
}

#[test]
fn check_passes_on_links() {
    let (code, out, err) = bin(&["check", &path("borromean.sg"), "--moves", "10"]);
    assert_eq!(code, 0, "{out}{err}");
    let (code, out, err) = bin(&["--seed", "3", "check", &path("hopf_pos.sg"), "--moves", "5"]);
    assert_eq!(code, 0, "{out}{err}");
}

#[test]
fn input_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("spatial-milnor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.sg");
    std::fs::write(&bad, "vertex 1 rotation +1 -1\nedge 1 component 1 from 1 to 1 passes X1o+\n").unwrap();
    let bad = bad.to_string_lossy().into_owned();

    let cases: Vec<Vec<String>> = vec![
        vec!["split".into(), bad],
        vec!["split".into(), dir.join("missing.sg").to_string_lossy().into_owned()],
        vec!["mu".into(), path("theta_clasp.sg")],
        vec!["--presentation".into(), "mu".into(), path("four_component_lambda.pres")],
        vec!["--presentation".into(), "check".into(), path("four_component_lambda.pres")],
        vec!["isplit".into(), path("borromean.sg"), "9".into()],
        vec!["--cap".into(), "0".into(), "split".into(), path("borromean.sg")],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = bin(&refs);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty(), "{args:?}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn parse_errors_carry_position() {
    let dir = std::env::temp_dir().join(format!("spatial-milnor-pos-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.sg");
    std::fs::write(&bad, "vertex 1 rotation +1 -1\nedge 1 component one from 1 to 1 passes\n").unwrap();
    let out = run(["spatial-milnor", "split", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn library_entry_point_matches_binary() {
    let p = path("trefoil_hopf.sg");
    let lib = run(["spatial-milnor", "--format", "json", "lambda", p.as_str()]);
    let (code, out, _) = bin(&["--format", "json", "lambda", &p]);
    assert_eq!(lib.code, code);
    assert_eq!(lib.stdout, out);
}
