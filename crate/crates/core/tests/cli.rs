use std::path::{Path, PathBuf};
use std::process::Command;

use rigidtrace::cli::run;
use rigidtrace::cyclic::{AlgebraMatrix, FDAlgebra};
use rigidtrace::field::Rationals;
use rigidtrace::fincat::{CategoryData, FinCat};
use serde_json::Value;
use tempfile::TempDir;

fn inputs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../inputs")
}

fn input(name: &str) -> String {
    inputs().join(name).display().to_string()
}

fn rt(args: &[&str]) -> (i32, String) {
    run(std::iter::once("rigidtrace").chain(args.iter().copied()))
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn check_reports_valid_category() {
    let (code, out) = rt(&["check", "--category", &input("delta2.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("valid"), "{out}");
}

#[test]
fn check_lists_violations_with_exit_one() {
    let (code, out) = rt(&[
        "--format",
        "json",
        "check",
        "--category",
        &input("delta2_broken.json"),
    ]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["kind"], "missing_composite");
}

#[test]
fn ill_formed_input_names_file_and_position() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.json", "{\n  \"objects\": [\"a\",\n}");
    let (code, out) = rt(&["check", "--category", &path]);
    assert_eq!(code, 2);
    assert!(out.contains("bad.json") && out.contains("line 3"), "{out}");
}

#[test]
fn matrix_trace_matches_diagonal_sum() {
    let dir = TempDir::new().unwrap();
    let smc = write(&dir, "mat.json", r#"{"field": "Fp", "p": 2, "maxdim": 2}"#);
    for (rows, expected) in [
        ("[[1, 1], [0, 1]]", "0"),
        ("[[1, 0], [1, 0]]", "1"),
        ("[[0, 1], [1, 0]]", "0"),
    ] {
        let endo = write(&dir, "f.json", rows);
        let (code, out) = rt(&["trace", "--smc", &smc, "--object", "2", "--endo", &endo]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.trim(), format!("[[{expected}]]"));
    }
    let smc = write(&dir, "matq.json", r#"{"field": "Q", "maxdim": 2}"#);
    let endo = write(&dir, "g.json", r#"[["1/2", 3], [7, "-5/3"]]"#);
    let (code, out) = rt(&[
        "--format", "json", "trace", "--smc", &smc, "--object", "2", "--endo", &endo,
    ]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["trace"][0][0], "-7/6");
}

#[test]
fn chern_of_first_projector() {
    let (code, out) = rt(&[
        "chern",
        "--algebra",
        &input("qxq.json"),
        "--idempotent",
        &input("e10.json"),
        "--uorder",
        "2",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("c_0 = (1, 0) = p0"), "{out}");
    assert!(out.contains("verified"));
}

#[test]
fn non_idempotent_is_a_validation_failure() {
    let dir = TempDir::new().unwrap();
    let a = FDAlgebra::dual_numbers(Rationals);
    let eps = AlgebraMatrix::new(&a, vec![vec![a.basis_vector(1)]]).unwrap();
    let e = write(
        &dir,
        "eps.json",
        &serde_json::to_string(&eps.to_data(&a)).unwrap(),
    );
    let (code, _) = rt(&[
        "chern",
        "--algebra",
        &input("dual_numbers.json"),
        "--idempotent",
        &e,
        "--uorder",
        "1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn hochschild_and_negcyclic() {
    let (code, out) = rt(&[
        "--format",
        "json",
        "hochschild",
        "--algebra",
        &input("dual_numbers_f3.json"),
        "--degree",
        "2",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim_full"], 1);
    assert_eq!(v["dim_normalized"], 1);
    let (code, out) = rt(&[
        "negcyclic",
        "--algebra",
        &input("dual_numbers.json"),
        "--degree",
        "0",
        "--uorder",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("stabilized: true"), "{out}");
}

#[test]
fn bordism_evaluation() {
    let (code, out) = rt(&[
        "bord-eval",
        "--group",
        &input("z3.json"),
        "--rep",
        &input("z3_rotation.json"),
        "--bordism",
        &input("trace1.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-1");
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad_rep.json",
        r#"{"field": "Q", "dim": 1, "images": {"1": [[2]]}}"#,
    );
    let (code, _) = rt(&[
        "bord-eval",
        "--group",
        &input("z3.json"),
        "--rep",
        &bad,
        "--bordism",
        &input("trace1.json"),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn special_names_failing_level() {
    let (code, out) = rt(&[
        "--format",
        "json",
        "special",
        "--gamma",
        &input("padded_gamma.json"),
        "--bound",
        "2",
    ]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["first_failure"], 0);
    let (code, _) = rt(&["special", "--monoid", &input("nat2_monoid.json")]);
    assert_eq!(code, 0);
    let (code, _) = rt(&["special", "--smc", &input("z2_smc.json"), "--bound", "3"]);
    assert_eq!(code, 0);
}

#[test]
fn diagrams_and_simplices() {
    let (code, out) = rt(&["sections", "--diagram", &input("diagram.json")]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = rt(&[
        "--format",
        "json",
        "simplices",
        "--category",
        &input("groupoid2.json"),
        "--bound",
        "2",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fibers"].as_array().unwrap().len(), 2);
    let (code, out) = rt(&[
        "nerve",
        "--category",
        &input("groupoid2.json"),
        "--bound",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("N_1: 8 simplices"));
}

#[test]
fn json_output_round_trips() {
    let (code, out) = rt(&[
        "--format",
        "json",
        "integrate",
        "--diagram",
        &input("diagram.json"),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let data: CategoryData = serde_json::from_value(v["category"].clone()).unwrap();
    assert_eq!(FinCat::from_data(&data).unwrap().to_data(), data);
    assert_eq!(
        v["cartesian"].as_array().unwrap().len(),
        data.morphisms.len()
    );

    let runs: Vec<Vec<&str>> = vec![
        vec!["dual", "--smc", "MAT", "--object", "2"],
        vec!["special", "--monoid", "MON", "--dump", "--bound", "2"],
        vec!["sections", "--diagram", "DIA"],
        vec![
            "chern",
            "--algebra",
            "QXQ",
            "--idempotent",
            "E10",
            "--uorder",
            "1",
        ],
    ];
    let names = [
        ("MAT", "mat_f2_2.json"),
        ("MON", "z2_monoid.json"),
        ("DIA", "diagram.json"),
        ("QXQ", "qxq.json"),
        ("E10", "e10.json"),
    ];
    for args in runs {
        let mut full = vec!["--format".to_string(), "json".to_string()];
        for a in args {
            full.push(
                names
                    .iter()
                    .find(|(k, _)| *k == a)
                    .map_or(a.to_string(), |(_, f)| input(f)),
            );
        }
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let (code, out) = rt(&refs);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let again: Value =
            serde_json::from_str(&serde_json::to_string_pretty(&v).unwrap()).unwrap();
        assert_eq!(v, again);
    }
}

#[test]
fn selftest_is_deterministic() {
    let a = rt(&[
        "--format", "json", "selftest", "--only", "7", "--only", "8", "--only", "10",
    ]);
    let b = rt(&[
        "--format", "json", "selftest", "--only", "7", "--only", "8", "--only", "10",
    ]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a, b);
}

#[test]
fn cap_override_is_honoured() {
    let status = Command::new(env!("CARGO_BIN_EXE_rigidtrace"))
        .args(["dual", "--smc", &input("mat_f2_2.json"), "--object", "2"])
        .env("RIGIDTRACE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&status.stdout).contains("over the cap"));
    let status = Command::new(env!("CARGO_BIN_EXE_rigidtrace"))
        .args(["dual", "--smc", &input("mat_f2_2.json"), "--object", "2"])
        .env("RIGIDTRACE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
}
