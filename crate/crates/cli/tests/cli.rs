use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn dialup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dialup")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = dialup(args);
    assert!(out.status.success(), "dialup {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn build_resources(out: &Path) {
    ok(&["resources", "build", "--conllu", s(&fixture("treebank.conllu")), "--corpus", s(&fixture("corpus.txt")), "--out", s(out)]);
}

fn merged_lexicon(dir: &Path) -> (PathBuf, PathBuf) {
    let res = dir.join("res");
    build_resources(&res);
    for src in ["swadesh", "panlex"] {
        let input = fixture(&format!("{src}.txt"));
        ok(&["lexicon", "load", "--input", s(&input), "--source", src, "--out", s(&dir.join(format!("{src}.tsv")))]);
    }
    let merged = dir.join("merged.tsv");
    let funcs = dir.join("crl_funcs.txt");
    ok(&["lexicon", "merge", "--input", s(&dir.join("swadesh.tsv")), "--input", s(&dir.join("panlex.tsv")), "--out", s(&merged)]);
    ok(&["lexicon", "project", "--lexicon", s(&merged), "--hrl-funcs", s(&res.join("function_words.txt")), "--out", s(&funcs)]);
    (merged, funcs)
}

#[test]
fn missing_input_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dialup(&["metrics", "chrf", "--hyp", s(&dir.path().join("nope.txt")), "--ref", s(&fixture("crl.txt"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.txt"));
}

#[test]
fn out_of_range_dials_are_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let res = dir.path().join("res");
    build_resources(&res);
    for dials in ["0.1,0.2,1.5,0", "0.1,0.2", "a,b,c,d"] {
        let out = dialup(&[
            "noise", "shell", "--bitext", s(&fixture("bitext.tsv")), "--resources", s(&res), "--out", s(&dir.path().join("o")),
            "--dials", dials,
        ]);
        assert_eq!(out.status.code(), Some(2), "dials {dials}");
    }
}

#[test]
fn malformed_lexicon_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "da\tthe\tnot-a-number\n").unwrap();
    let out = dialup(&["lexicon", "load", "--input", s(&bad), "--source", "x", "--out", s(&dir.path().join("o.tsv"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn same_seed_same_output() {
    let dir = tempfile::tempdir().unwrap();
    let res = dir.path().join("res");
    build_resources(&res);
    let run = |name: &str, seed: &str| {
        let out = dir.path().join(name);
        ok(&["--seed", seed, "noise", "shell", "--bitext", s(&fixture("bitext.tsv")), "--resources", s(&res), "--out", s(&out)]);
        std::fs::read(out.join("corpus.tsv")).unwrap()
    };
    let (a, b, c) = (run("a", "7"), run("b", "7"), run("c", "8"));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn resource_build_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    build_resources(&a);
    build_resources(&b);
    for f in ["function_words.txt", "suffixes.tsv", "charlm.tsv", "vocab.tsv"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let funcs = std::fs::read_to_string(a.join("function_words.txt")).unwrap();
    assert_eq!(funcs.lines().count(), 18);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let res = dir.path().join("res");
    build_resources(&res);
    let cfg = dir.path().join("dialup.toml");
    std::fs::write(&cfg, format!("seed = 5\n\n[resources]\ndir = {:?}\n\n[noise]\ndials = [0.0, 0.0, 0.0, 0.0]\n", s(&res))).unwrap();
    let bitext = fixture("bitext.tsv");
    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(name);
        let mut args = vec!["--config", s(&cfg), "noise", "shell", "--bitext", s(&bitext), "--out", s(&out)];
        args.extend(extra);
        ok(&args);
        std::fs::read_to_string(out.join("metadata.json")).unwrap()
    };
    let from_file = run("file", &[]);
    assert!(from_file.contains("\"seed\": 5"));
    let corpus = std::fs::read_to_string(dir.path().join("file/corpus.tsv")).unwrap();
    assert_eq!(corpus, std::fs::read_to_string(fixture("bitext.tsv")).unwrap());

    let overridden = run("flag", &["--dials", "0.05,0.3,0.5,0.001"]);
    assert!(overridden.contains("0.3"));
    let reseeded = run("seed", &["--seed", "9"]);
    assert!(reseeded.contains("\"seed\": 9"));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dialup.toml");
    std::fs::write(&cfg, "sead = 5\n").unwrap();
    let out = dialup(&["--config", s(&cfg), "metrics", "chrf", "--hyp", s(&fixture("crl.txt")), "--ref", s(&fixture("crl.txt"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn all_mode_swaps_at_least_as_much_as_func() {
    let dir = tempfile::tempdir().unwrap();
    let (lex, funcs) = merged_lexicon(dir.path());
    let report = |mode: &str| {
        let path = dir.path().join(format!("{mode}.tsv"));
        ok(&[
            "dtm", "swap", "--mode", mode, "--lexicon", s(&lex), "--crl-funcs", s(&funcs), "--input", s(&fixture("crl.txt")),
            "--output", s(&dir.path().join(format!("{mode}.txt"))), "--report", s(&path),
        ]);
        let text = std::fs::read_to_string(path).unwrap();
        let row: Vec<String> = text.lines().nth(1).unwrap().split('\t').map(String::from).collect();
        row
    };
    let func = report("func");
    let all = report("all");
    assert_eq!(func, ["func", "153", "63", "0.411765", "0"]);
    assert_eq!(all, ["all", "153", "108", "0.705882", "45"]);
}

#[test]
fn swap_writes_to_stdout_without_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let (lex, funcs) = merged_lexicon(dir.path());
    let out = dialup(&["dtm", "swap", "--lexicon", s(&lex), "--crl-funcs", s(&funcs), "--input", s(&fixture("crl.txt"))]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().next(), Some("The fairmer gaed to the mairket."));
    assert!(String::from_utf8_lossy(&out.stderr).contains("func\t153\t63"));
}

#[test]
fn chrf_of_a_file_with_itself() {
    let out = ok(&["metrics", "chrf", "--hyp", s(&fixture("corpus.txt")), "--ref", s(&fixture("corpus.txt"))]);
    assert_eq!(out.trim(), "100.00");
    let per_line = ok(&["metrics", "chrf", "--hyp", s(&fixture("crl.txt")), "--ref", s(&fixture("crl.txt")), "--sentence"]);
    assert_eq!(per_line.lines().count(), 20);
}

#[test]
fn chrf_rejects_length_mismatch() {
    let out = dialup(&["metrics", "chrf", "--hyp", s(&fixture("crl.txt")), "--ref", s(&fixture("corpus.txt"))]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn function_word_share_of_crl_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let (_, funcs) = merged_lexicon(dir.path());
    let out = ok(&["metrics", "func-share", "--corpus", s(&fixture("crl.txt")), "--funcs", s(&funcs)]);
    assert_eq!(out.trim(), "0.411765");
}

#[test]
fn induced_lexicon_with_trace() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("ibm1.tsv");
    let trace = dir.path().join("trace.tsv");
    ok(&["lexicon", "induce", "--bitext", s(&fixture("bitext.tsv")), "--iterations", "5", "--out", s(&lex), "--trace", s(&trace)]);
    let trace = std::fs::read_to_string(trace).unwrap();
    let ll: Vec<f64> = trace.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(ll.len(), 6);
    assert!(ll.windows(2).all(|w| w[1] >= w[0]));
    assert!(std::fs::read_to_string(lex).unwrap().starts_with("#priority\tibm1\n"));
}

#[test]
fn sweep_grows_with_theta() {
    let dir = tempfile::tempdir().unwrap();
    let res = dir.path().join("res");
    build_resources(&res);
    let out = dir.path().join("sweep");
    ok(&["sweep", "--dim", "p", "--grid", "0,0.2,0.5", "--bitext", s(&fixture("bitext.tsv")), "--resources", s(&res), "--out", s(&out)]);
    let table = std::fs::read_to_string(out.join("sweep.tsv")).unwrap();
    let rows: Vec<Vec<f64>> =
        table.lines().skip(1).map(|l| l.split('\t').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][1], 0.0);
    assert_eq!(rows[0][2], 100.0);
    assert!(rows[2][1] > rows[0][1]);
}

#[test]
fn randaug_writes_no_languages() {
    let dir = tempfile::tempdir().unwrap();
    let res = dir.path().join("res");
    build_resources(&res);
    let out = dir.path().join("ra");
    ok(&["noise", "randaug-cloud", "--bitext", s(&fixture("bitext.tsv")), "--resources", s(&res), "--out", s(&out)]);
    assert!(out.join("corpus.tsv").exists());
    assert!(!out.join("languages").exists());
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["chunks"].as_array().unwrap().len(), 10);
    assert_eq!(meta["chunks"][9]["dials"], serde_json::json!([0.07, 0.001]));
}
