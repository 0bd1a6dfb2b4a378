//! End-to-end tests of the command line binary: outputs, JSON round-trips,
//! exit codes, and figure emission.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadeuclid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn divide_text_output() {
    let out = run(&["divide", "-m", "7", "--xi", "1/2,5/14"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pair    = (0, 0)"), "{text}");
    assert!(text.contains("norm    = -9/14"), "{text}");
}

#[test]
fn divide_at_origin() {
    let out = run(&["divide", "-m", "2", "--xi", "0,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("gamma   = 0 + 0*w"), "{text}");
    assert!(text.contains("norm    = 0"), "{text}");
}

#[test]
fn divide_json_round_trips() {
    let out = run(&["divide", "-m", "19", "--xi", "1/3,1/3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let parsed = quadeuclid::json::divide_from_json(&v).unwrap();
    assert_eq!(parsed.m, 19);
    // |norm| <= 170/171
    let bound = quadeuclid_core::exact::rat(170, 171);
    assert!(num_traits::Signed::abs(&parsed.remainder_norm) <= bound);
}

#[test]
fn divide_rejects_decimal_input() {
    let out = run(&["divide", "-m", "7", "--xi", "0.5,0.357"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn divide_all_pairs_scan() {
    let out = run(&["divide", "-m", "7", "--xi", "1/3,1/3", "--all-pairs"]);
    assert!(out.status.success());
}

#[test]
fn unsupported_field_is_usage_error() {
    let out = run(&["divide", "-m", "5", "--xi", "1/2,1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported field"));
}

#[test]
fn coverset_matches_published_set() {
    let out = run(&["coverset", "-m", "11", "--p", "1/2,7/22", "--bound", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[-16, -5]"));
    assert!(text.contains("6 pairs"));

    let out = run(&[
        "coverset", "-m", "11", "--p", "1/2,7/22", "--bound", "100", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (m, _, bound, pairs) = quadeuclid::json::coverset_from_json(&v).unwrap();
    assert_eq!((m, bound), (11, 100));
    assert_eq!(
        pairs,
        vec![(-16, -5), (-6, -2), (-1, 0), (0, 0), (5, -2), (15, -5)]
    );
}

#[test]
fn gcd_command() {
    let out = run(&["gcd", "-m", "2", "--alpha", "5,1", "--beta", "1,2"]);
    assert!(out.status.success());
    let out = run(&["gcd", "-m", "2", "--alpha", "5,1", "--beta", "1,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (m, g) = quadeuclid::json::gcd_from_json(&v).unwrap();
    assert_eq!(m, 2);
    assert_eq!(g.len(), 2);
}

#[test]
fn verify_shipped_certificates_exit_zero() {
    for m in ["2", "3", "6", "7", "11", "19"] {
        let path = data(&format!("m{m}.cert"));
        let out = run(&["verify", path.to_str().unwrap()]);
        assert!(out.status.success(), "m={m}: {}", stdout(&out));
        assert!(stdout(&out).contains("verification PASSED"));
    }
}

#[test]
fn verify_mutated_certificate_exits_one() {
    let text = std::fs::read_to_string(data("m7.cert")).unwrap();
    // corrupt the first claim polynomial: 2a+1 -> 2a-1
    let broken = text.replace("poly=1,2 case=a2", "poly=-1,2 case=a2");
    assert_ne!(text, broken);
    let dir = std::env::temp_dir().join("quadeuclid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.cert");
    std::fs::write(&path, broken).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_missing_file_is_usage_error() {
    let out = run(&["verify", "/nonexistent/path.cert"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_report_round_trips() {
    let path = data("m6.cert");
    let out = run(&["verify", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (pass, checks) = quadeuclid::json::report_from_json(&v).unwrap();
    assert!(pass);
    assert!(checks.iter().any(|(name, ok, _)| name == "tiling" && *ok));
}

#[test]
fn search_writes_verifiable_certificate() {
    let dir = std::env::temp_dir().join("quadeuclid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m3-search.cert");
    let out = run(&["search", "-m", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("search complete"));
    let verify_out = run(&["verify", path.to_str().unwrap()]);
    assert!(verify_out.status.success());
}

#[test]
fn search_json_summary() {
    let out = run(&["search", "-m", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (m, complete, _, pairs) = quadeuclid::json::search_from_json(&v).unwrap();
    assert_eq!(m, 2);
    assert!(complete);
    assert_eq!(pairs, vec![(0, 0)]);
}

#[test]
fn search_zero_budget_reports_incomplete() {
    let out = run(&["search", "-m", "6", "--budget", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("INCOMPLETE"));
}

#[test]
fn plot_emits_svg_and_tikz() {
    let dir = std::env::temp_dir().join("quadeuclid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("m7.svg");
    let out = run(&[
        "plot",
        data("m7.cert").to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.contains("<svg"));
    assert!(doc.contains("<polyline"));

    let tex = dir.join("m7.tex");
    let out = run(&[
        "plot",
        data("m7.cert").to_str().unwrap(),
        "--out",
        tex.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = std::fs::read_to_string(&tex).unwrap();
    assert!(doc.starts_with("\\documentclass[tikz]{standalone}"));
    assert!(doc.contains("\\end{document}"));
}

#[test]
fn search_with_custom_bound() {
    // a weaker bound than the Euclidean minimum is a legitimate target; a
    // stronger one is impossible and rejected up front
    let out = run(&["search", "-m", "2", "--m1", "3/4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (_, complete, _, pairs) = quadeuclid::json::search_from_json(&v).unwrap();
    assert!(complete);
    assert_eq!(pairs, vec![(0, 0)]);

    let out = run(&["search", "-m", "6", "--m1", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("below the Euclidean minimum"));
}

#[test]
fn verify_rejects_bound_below_minimum() {
    let text = std::fs::read_to_string(data("m7.cert")).unwrap();
    let broken = text.replace("field m=7 M=9/14", "field m=7 M=1/3");
    let dir = std::env::temp_dir().join("quadeuclid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("too-strong.cert");
    std::fs::write(&path, broken).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("below the Euclidean minimum"));
}

#[test]
fn verify_rejects_nonsense_field_rows() {
    let dir = std::env::temp_dir().join("quadeuclid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    for bad in ["field m=1 M=1/2", "field m=7 M=-9/14", "field m=7 M=0"] {
        let path = dir.join("bad-field.cert");
        std::fs::write(&path, format!("{bad}\n")).unwrap();
        let out = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
}
