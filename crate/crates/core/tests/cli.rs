use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_snarkdefect"))
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/corpus").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = bin().args(args).output().expect("binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn measure_petersen_lines() {
    let (code, out, _) = run(&["measure", p(&corpus("petersen.g6")), "--all"]);
    assert_eq!(code, 0);
    for line in [
        "vertices: 10",
        "colourable: false",
        "perfect-matchings: 6",
        "girth: 5",
        "defect: 3",
        "oddness: 2",
        "resistance: 2",
        "density: 1",
        "cyclic-connectivity: 5",
    ] {
        assert!(out.lines().any(|l| l == line), "missing `{line}` in\n{out}");
    }
}

#[test]
fn measure_json_parses() {
    let (code, out, _) = run(&["measure", p(&corpus("tietze.g6")), "--all", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v.is_array() || v.is_object());
    assert!(out.contains("\"oddness\""));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.txt");
    let (code, out, _) = run(&["measure", p(&corpus("k4.g6")), "--out", p(&target)]);
    assert_eq!(code, 0);
    assert!(out.is_empty() || !out.contains("vertices: 4"));
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.contains("vertices: 4"));
}

#[test]
fn defect_with_oracle_agrees() {
    for name in ["petersen.g6", "blanusa-2.g6", "k33.g6", "theta.s6"] {
        let (code, out, err) = run(&["defect", p(&corpus(name)), "--oracle"]);
        assert_eq!(code, 0, "{name}: {err}");
        assert!(out.contains("(agrees)"), "{name}:\n{out}");
    }
}

#[test]
fn malformed_graph_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "garbage\n").unwrap();
    let (code, _, err) = run(&["measure", p(&bad)]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    let (code, _, _) = run(&["measure", p(&dir.path().join("missing.g6"))]);
    assert_eq!(code, 1);
}

#[test]
fn tiny_budget_is_undecided() {
    let (code, out, _) = run(&["measure", p(&corpus("blanusa-1.g6")), "--all", "--budget", "1"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn girth_five_refused_with_guidance() {
    let (code, _, err) = run(&["build-snark", "--girth", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("rotation snarks"), "{err}");
}

#[test]
fn audit_corpus_passes() {
    let dir = corpus("");
    let (code, out, err) = run(&["audit-corpus", p(&dir)]);
    assert_eq!(code, 0, "{out}{err}");
    let (code, out, _) = run(&["audit-corpus", p(&dir), "--json"]);
    assert_eq!(code, 0);
    serde_json::from_str::<Value>(&out).unwrap();
}

#[test]
fn build_then_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("snark");
    let (code, out, err) = run(&["build-snark", "--girth", "6", "--prefix", p(&prefix)]);
    assert_eq!(code, 0, "{err}");
    assert!(out.lines().any(|l| l == "vertices: 306"));
    assert!(out.lines().any(|l| l == "verified: true"));

    let graph = dir.path().join("snark.s6");
    let bundle = dir.path().join("snark.bundle.json");
    let near = dir.path().join("snark.near.json");
    let plan = dir.path().join("snark.plan.toml");
    assert_eq!(run(&["verify", p(&graph), p(&bundle)]).0, 0);
    assert_eq!(run(&["verify", p(&graph), p(&near)]).0, 0);

    // Rebuilding from the echoed plan reproduces the graph byte for byte.
    let again = dir.path().join("again");
    let (code, _, err) = run(&["build-snark", "--plan", p(&plan), "--prefix", p(&again)]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(
        std::fs::read(&graph).unwrap(),
        std::fs::read(dir.path().join("again.s6")).unwrap()
    );

    // A flipped colour breaks properness at new vertices.
    let mut v: Value = serde_json::from_slice(&std::fs::read(&near).unwrap()).unwrap();
    let colours = v["colours"].as_array_mut().unwrap();
    let c = colours[100].as_u64().unwrap();
    colours[100] = Value::from(c % 3 + 1);
    let tampered = dir.path().join("flipped.json");
    std::fs::write(&tampered, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", p(&graph), p(&tampered)]);
    assert_eq!(code, 3, "{out}");

    // A bundle for a different graph is a certificate mismatch.
    let mut b: Value = serde_json::from_slice(&std::fs::read(&bundle).unwrap()).unwrap();
    b["graph_checksum"] = Value::from("00");
    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, serde_json::to_string(&b).unwrap()).unwrap();
    assert_eq!(run(&["verify", p(&graph), p(&wrong)]).0, 3);

    // An inflated girth claim fails the girth check.
    let mut b: Value = serde_json::from_slice(&std::fs::read(&bundle).unwrap()).unwrap();
    b["girth"]["value"] = Value::from(7);
    let inflated = dir.path().join("inflated.json");
    std::fs::write(&inflated, serde_json::to_string(&b).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", p(&graph), p(&inflated)]);
    assert_eq!(code, 3);
    assert!(out.lines().any(|l| l.starts_with("check.girth: FAIL")), "{out}");
}

#[test]
fn array_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = corpus("petersen.g6");
    let graph = snarkdefect::io::read_graph(&g).unwrap();
    let d = snarkdefect::matchings::defect(&graph).unwrap();
    let file = snarkdefect::io::ArrayFile::new(&graph, &d.witness);
    let good = serde_json::to_value(&file).unwrap();
    let path = dir.path().join("array.json");
    std::fs::write(&path, good.to_string()).unwrap();
    let (code, out, err) = run(&["verify", p(&g), p(&path)]);
    assert_eq!(code, 0, "{out}{err}");

    let mut bad = good.clone();
    bad["classes"] = serde_json::json!([4, 5, 6, 0]);
    std::fs::write(&path, bad.to_string()).unwrap();
    assert_eq!(run(&["verify", p(&g), p(&path)]).0, 1);

    std::fs::write(&path, "{\"members\": 3}").unwrap();
    assert_eq!(run(&["verify", p(&g), p(&path)]).0, 1);
}
