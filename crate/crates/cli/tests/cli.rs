use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str], file: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rolle-lab"));
    cmd.args(args);
    if let Some(f) = file {
        cmd.arg(f);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn oscillator_report() {
    let out = run(&["dlvp", "--verify"], Some(&fixture("dlvp_oscillator.json")));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["schema"], "rolle-lab/report");
    assert_eq!(r["bound"], "23");
    assert_eq!(r["oracle_count"], 11);
    assert_eq!(r["ok"], true);
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn missing_field_is_named() {
    let out = run(&["dlvp"], Some(&fixture("malformed.json")));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("`bounds`"), "{}", stderr(&out));
}

#[test]
fn numeric_literal_in_exact_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"{"bounds": [0, 1], "length": "3"}"#).unwrap();
    let out = run(&["dlvp"], Some(&path));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bounds[0]"), "{}", stderr(&out));
    std::fs::write(&path, "{\"bounds\": [\n").unwrap();
    let out = run(&["dlvp"], Some(&path));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn kind_mismatch_and_missing_file() {
    let out = run(&["kim"], Some(&fixture("dlvp_oscillator.json")));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("`dlvp`"));
    let out = run(&["kim"], Some(Path::new("/nonexistent/problem.json")));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unmet_hypothesis_exits_two() {
    let out = run(&["jensen"], Some(&fixture("jensen_bad_radius.json")));
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("hypothesis"));
}

#[test]
fn regular_germ_has_multiplicity_one() {
    let out = run(&["mult", "--verify"], Some(&fixture("mult_regular.json")));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["results"]["multiplicity"], 1);
    assert_eq!(r["checks"]["methods_agree"], true);
    assert_eq!(r["checks"]["preimages_match"], true);
}

#[test]
fn empty_corpus_succeeds() {
    let out = run(&["corpus", "--kind", "rolle", "--count", "0"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!((r["passed"].as_u64(), r["failed"].as_u64()), (Some(0), Some(0)));
    let out = run(&["corpus", "--kind", "nonsense", "--count", "1"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corpus_file_and_thread_count_agree() {
    let with = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_rolle-lab"))
            .arg("corpus")
            .arg(fixture("corpus.json"))
            .env("ROLLE_LAB_THREADS", threads)
            .output()
            .unwrap()
    };
    let (one, four) = (with("1"), with("4"));
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(one.stdout, four.stdout);
    let r = report(&one);
    assert_eq!((r["count"].as_u64(), r["seed"].as_str()), (Some(20), Some("5")));
    assert_eq!(r["instances"].as_array().unwrap().len(), 20);
}

#[test]
fn reruns_are_byte_identical() {
    for (kind, file) in [("meander", "meander.json"), ("curve", "curve_helix.json"), ("fuchs", "fuchs.json")] {
        let a = run(&[kind, "--verify", "--seed", "7"], Some(&fixture(file)));
        let b = run(&[kind, "--verify", "--seed", "7"], Some(&fixture(file)));
        assert_eq!(a.status.code(), Some(0), "{kind}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
}

#[test]
fn emitted_reports_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(
        &["descartes", "--verify", "--out", path.to_str().unwrap()],
        Some(&fixture("descartes.json")),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = run(&["verify"], Some(&path));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["checks"]["hypotheses_revalidate"], true);
    assert_eq!(r["ok"], true);
}

#[test]
fn manufactured_contradiction_exits_three() {
    let out = run(&["verify"], Some(&fixture("contradiction.json")));
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["ok"], false);
    assert!(stderr(&out).contains("contradiction"));
}

#[test]
fn text_format_and_timing() {
    let out = run(&["chain", "--format", "text", "--timing"], Some(&fixture("chain.json")));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("checks.rolle_chain = true"));
    assert!(text.lines().any(|l| l.starts_with("timing_ms = ")));
}
