use std::process::Command;

use approx::assert_abs_diff_eq;

use lenslab_cli::render::{CavityDocument, OutputDocument, ParamsDocument, CSV_HEADER};
use lenslab_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lenslab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn compose_json_round_trips() {
    let (code, out, _) = invoke(&["compose", "--d1", "2", "--d2", "3"]);
    assert_eq!(code, EXIT_OK);
    let doc: OutputDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.regime, "hyperbolic");
    assert_abs_diff_eq!(doc.core.x, 6f64.sqrt(), epsilon = 1e-11);
    assert_abs_diff_eq!(doc.matrix[1], 6f64.sqrt() / 6.0, epsilon = 1e-11);
    assert!(doc.residuals.dictionary < 1e-12);
    assert!(doc.residuals.reconstruction < 1e-12);
    let again = serde_json::to_string_pretty(&doc).unwrap();
    assert_eq!(serde_json::from_str::<OutputDocument>(&again).unwrap(), doc);
}

#[test]
fn json_keys_keep_their_order() {
    let (_, out, _) = invoke(&["compose", "--d1", "1.5", "--d2", "1.5"]);
    let keys = [
        "\"input\"",
        "\"core\"",
        "\"matrix\"",
        "\"regime\"",
        "\"little_group\"",
        "\"wigner\"",
        "\"residuals\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| out.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{out}");
}

#[test]
fn regimes_are_lowercase() {
    for (d2, regime) in [("1.5", "elliptic"), ("2", "parabolic"), ("3", "hyperbolic")] {
        let (_, out, _) = invoke(&["params", "--d1", "2", "--d2", d2]);
        let doc: ParamsDocument = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.regime, regime);
    }
}

#[test]
fn text_format_is_a_table() {
    let (code, out, _) = invoke(&["compose", "--d1", "2", "--d2", "2", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out
        .lines()
        .any(|l| l.starts_with("regime") && l.ends_with("parabolic")));
    assert!(out.contains("matrix"));
    assert!(out.contains("[[1, 0], [2, 1]]"));
}

#[test]
fn sweep_writes_header_and_rows() {
    let (code, out, _) = invoke(&[
        "sweep", "--d1", "2", "--d2-min", "1.8", "--d2-max", "2.2", "--steps", "41",
    ]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 41);
    assert!(rows.iter().all(|r| r.split(',').count() == 12));
    assert!(rows[20].contains(",parabolic,"));
}

#[test]
fn sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = invoke(&[
        "sweep", "--d1", "2", "--d2-min", "1.8", "--d2-max", "2.2", "--steps", "5", "--out", p,
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(reader.records().count(), 5);
}

#[test]
fn cavity_by_ratio_and_by_distance_agree() {
    let (_, a, _) = invoke(&["cavity", "--x", "1.5"]);
    let (_, b, _) = invoke(&["cavity", "--d", "3", "--f", "2"]);
    let a: CavityDocument = serde_json::from_str(&a).unwrap();
    let b: CavityDocument = serde_json::from_str(&b).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.matrix, [0.5, -0.5, 1.5, 0.5]);
    assert_abs_diff_eq!(a.wigner.lambda, 0.5f64.asinh(), epsilon = 1e-11);
    assert!(a.residuals.cavity_identity < 1e-12);
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["compose", "--d1", "0.5", "--d2", "2"][..],
        &["compose", "--d1", "2", "--d2", "2", "--f", "-1"][..],
        &["cavity", "--x", "0.9"][..],
        &[
            "sweep", "--d1", "2", "--d2-min", "2.2", "--d2-max", "1.8", "--steps", "5",
        ][..],
        &[
            "sweep", "--d1", "2", "--d2-min", "1.8", "--d2-max", "2.2", "--steps", "1",
        ][..],
    ] {
        let (code, out, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty());
        assert!(err.starts_with("error:"), "{err}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compose", "--bogus"][..],
        &["compose", "--d1", "2"][..],
        &["--tol", "-1", "params", "--d1", "2", "--d2", "3"][..],
        &["--tol", "nan", "params", "--d1", "2", "--d2", "3"][..],
        &["cavity", "--x", "2", "--d", "2"][..],
        &["frobnicate"][..],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("compose"));
}

#[test]
fn verify_passes_for_default_seed() {
    let (code, out, _) = invoke(&["verify", "--cases", "100"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().last().unwrap().contains("checks passed"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_fails_with_exit_one_when_a_check_fails() {
    // a band this wide reclassifies well-separated systems as parabolic
    let (code, out, _) = invoke(&["--tol", "0.5", "verify", "--cases", "50"]);
    assert_eq!(code, EXIT_FAILED, "{out}");
    assert!(out.contains("FAIL"));
}

/// Just beyond focus: hyperbolic at the default band, parabolic at a wider one.
const NEAR_FOCUS: [&str; 5] = ["params", "--d1", "2", "--d2", "2.000000001"];

fn regime_of(out: &[u8]) -> String {
    serde_json::from_slice::<ParamsDocument>(out)
        .unwrap()
        .regime
}

#[test]
fn tolerance_flag_widens_the_parabolic_band() {
    let (_, out, _) = invoke(&NEAR_FOCUS);
    let doc: ParamsDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.regime, "hyperbolic");
    assert!(out.contains("near_contraction"));
    let mut args = vec!["--tol", "1e-8"];
    args.extend(NEAR_FOCUS);
    let (_, out, _) = invoke(&args);
    assert_eq!(regime_of(out.as_bytes()), "parabolic");
}

#[test]
fn tolerance_precedence_flag_over_env_over_default() {
    let bin = env!("CARGO_BIN_EXE_lenslab");
    let default = Command::new(bin)
        .args(NEAR_FOCUS)
        .env_remove("LENSLAB_TOL")
        .output()
        .unwrap();
    assert_eq!(regime_of(&default.stdout), "hyperbolic");
    let env = Command::new(bin)
        .args(NEAR_FOCUS)
        .env("LENSLAB_TOL", "1e-8")
        .output()
        .unwrap();
    assert_eq!(regime_of(&env.stdout), "parabolic");
    let flag = Command::new(bin)
        .args(NEAR_FOCUS)
        .args(["--tol", "1e-10"])
        .env("LENSLAB_TOL", "1e-8")
        .output()
        .unwrap();
    assert_eq!(regime_of(&flag.stdout), "hyperbolic");
    let bad_env = Command::new(bin)
        .args(NEAR_FOCUS)
        .env("LENSLAB_TOL", "0")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(EXIT_USAGE));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lenslab");
    let ok = Command::new(bin)
        .args(["compose", "--d1", "2", "--d2", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin)
        .args(["compose", "--d1", "1", "--d2", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}
