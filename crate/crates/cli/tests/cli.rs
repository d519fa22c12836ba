//! End-to-end tests driving the `sbd` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use sbd_core::datasets::load_delimited;
use sbd_core::charboundary::deserialize_model;

fn sbd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sbd"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = sbd().args(args).output().expect("spawn sbd");
    assert!(
        out.status.success(),
        "sbd {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = sbd()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn sbd");
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn fixtures_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixtures/citations.sbd")
}

fn synth_corpus(dir: &Path, seed: u64) -> PathBuf {
    let out_dir = dir.join(format!("synth-{seed}"));
    run_ok(&["synth", "--n-docs", "60", "--seed", &seed.to_string(), "--out-dir",
        out_dir.to_str().unwrap()]);
    out_dir.join("corpus.sbd")
}

#[test]
fn synth_is_deterministic_and_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    let a = synth_corpus(tmp.path(), 7);
    let b_dir = tmp.path().join("again");
    run_ok(&["synth", "--n-docs", "60", "--seed", "7", "--out-dir", b_dir.to_str().unwrap()]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(b_dir.join("corpus.sbd")).unwrap());

    let examples = load_delimited(&a).unwrap();
    assert_eq!(examples.len(), 60);
    // Manifest written alongside the corpus.
    let manifest = fs::read_to_string(a.with_file_name("corpus.sbd.manifest.json")).unwrap();
    assert!(manifest.contains("\"command\": \"synth\""));
    assert!(manifest.contains("\"seed\": 7"));
}

#[test]
fn train_punkt_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = synth_corpus(tmp.path(), 11);
    let p1 = tmp.path().join("a.params");
    let p2 = tmp.path().join("b.params");
    for p in [&p1, &p2] {
        run_ok(&["train-punkt", "--corpus", corpus.to_str().unwrap(), "--out",
            p.to_str().unwrap()]);
    }
    let bytes = fs::read(&p1).unwrap();
    assert_eq!(bytes, fs::read(&p2).unwrap());
    assert!(bytes.starts_with(b"nupunkt-params/1"));
}

#[test]
fn train_charboundary_presets_and_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = synth_corpus(tmp.path(), 13);
    let m1 = tmp.path().join("a.model");
    let m2 = tmp.path().join("b.model");
    for m in [&m1, &m2] {
        run_ok(&["train-charboundary", "--dataset", corpus.to_str().unwrap(), "--preset",
            "small", "--seed", "17", "--out", m.to_str().unwrap()]);
    }
    assert_eq!(fs::read(&m1).unwrap(), fs::read(&m2).unwrap());
    let model = deserialize_model(&fs::read_to_string(&m1).unwrap()).unwrap();
    assert_eq!(model.config.window, 5);
    assert_eq!(model.config.n_trees, 32);

    // Sweep over the trained model: 11 rows plus header, recall non-increasing.
    let out = run_ok(&["sweep", "--model", m1.to_str().unwrap(), "--dataset",
        corpus.to_str().unwrap(), "--grid", "0.0:1.0:0.1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "threshold,precision,recall,f1");
    assert_eq!(rows.len(), 12);
    let recalls: Vec<f64> =
        rows[1..].iter().map(|r| r.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert!(recalls.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn segment_does_not_split_inside_section_reference() {
    let text = "If the bonus is payable under Sec. 4.3(c) of the Plan, the Committee shall \
certify achievement of the performance goals in accordance with I.R.C. \u{a7} \
409A(a)(2)(B)(i) and the regulations thereunder.";
    let out = run_with_stdin(&["segment", "--engine", "punkt"], text);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
}

#[test]
fn segment_offsets_cover_input_exactly() {
    let text = "The court granted the motion. The parties appealed. Briefing follows.";
    let out = run_with_stdin(&["segment", "--engine", "punkt", "--format", "offsets"], text);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let spans: Vec<(usize, usize)> = stdout
        .lines()
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(spans.first().unwrap().0, 0);
    assert_eq!(spans.last().unwrap().1, text.chars().count());
    assert!(spans.windows(2).all(|w| w[0].1 == w[1].0));
    let rebuilt: String =
        spans.iter().map(|&(a, b)| text.chars().skip(a).take(b - a).collect::<String>()).collect();
    assert_eq!(rebuilt, text);
}

#[test]
fn segment_empty_stdin_is_empty_success() {
    let out = run_with_stdin(&["segment", "--engine", "punkt"], "");
    assert!(out.stdout.is_empty());
}

#[test]
fn evaluate_kb_toggle_changes_precision_on_citation_fixtures() {
    let fixtures = fixtures_path();
    let parse_precision = |out: Output| -> f64 {
        let text = String::from_utf8(out.stdout).unwrap();
        let row = text.lines().nth(1).unwrap();
        row.split(',').nth(1).unwrap().parse().unwrap()
    };
    let on = parse_precision(run_ok(&["evaluate", "--engine", "punkt", "--dataset",
        fixtures.to_str().unwrap(), "--report-format", "csv"]));
    let off = parse_precision(run_ok(&["evaluate", "--engine", "punkt", "--dataset",
        fixtures.to_str().unwrap(), "--report-format", "csv", "--kb", "off"]));
    assert!(on > off, "kb on {on} should beat kb off {off}");
}

#[test]
fn unknown_engine_is_a_usage_error() {
    let out = sbd()
        .args(["evaluate", "--engine", "bogus", "--dataset", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_corpus_dir_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = sbd()
        .args(["train-punkt", "--corpus", tmp.path().to_str().unwrap(), "--out",
            tmp.path().join("p").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("EmptyCorpus"));
}

#[test]
fn single_point_sweep_matches_default_threshold_evaluation() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = synth_corpus(tmp.path(), 19);
    let model = tmp.path().join("m.model");
    run_ok(&["train-charboundary", "--dataset", corpus.to_str().unwrap(), "--preset", "small",
        "--out", model.to_str().unwrap()]);

    let sweep = run_ok(&["sweep", "--model", model.to_str().unwrap(), "--dataset",
        corpus.to_str().unwrap(), "--grid", "0.5"]);
    let sweep_text = String::from_utf8(sweep.stdout).unwrap();
    let sweep_f1: f64 =
        sweep_text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();

    let eval = run_ok(&["evaluate", "--engine", "charboundary", "--model",
        model.to_str().unwrap(), "--dataset", corpus.to_str().unwrap(), "--report-format",
        "csv"]);
    let eval_text = String::from_utf8(eval.stdout).unwrap();
    let eval_f1: f64 =
        eval_text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!((sweep_f1 - eval_f1).abs() < 1e-12);
}
