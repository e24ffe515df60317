use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lossy-cvc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SPEC: &str = r#"{
  "components": [{"class": "tree", "size": 5}, {"class": "chordal", "size": 5}],
  "k": 2,
  "density": 0.3,
  "epsilon": "1/2",
  "mode": "unified(2)"
}"#;

#[test]
fn gen_kernelize_solve_lift() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("spec.json"), SPEC).unwrap();
    let (inst, kern, tr, sol, cert) =
        (p(dir.path(), "g.txt"), p(dir.path(), "k.txt"), p(dir.path(), "t.jsonl"), p(dir.path(), "q.txt"), p(dir.path(), "c.json"));
    let o = run(&["gen", "--spec", &p(dir.path(), "spec.json"), "--seed", "7", "--out", &inst]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["kernelize", "--in", &inst, "--out-kernel", &kern, "--out-transcript", &tr]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["solve", "--in", &kern, "--method", "oracle", "--out", &sol]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["lift", "--in", &inst, "--kernel", &kern, "--transcript", &tr, "--solution", &sol, "--out", &cert]);
    assert!(o.status.success(), "{}", stderr(&o));
    let c: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    let ratio = c["oracle_ratio"].as_str().unwrap();
    let (n, d) = ratio.split_once('/').unwrap();
    let (n, d): (u64, u64) = (n.parse().unwrap(), d.parse().unwrap());
    assert!(2 * n <= 3 * d, "ratio {ratio} above 1 + 1/2");
    assert!(c["checks"].as_array().unwrap().iter().all(|x| x["passed"] == true));
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("spec.json"), SPEC).unwrap();
    let spec = p(dir.path(), "spec.json");
    let a = run(&["gen", "--spec", &spec, "--seed", "3", "--format", "json"]);
    let b = run(&["gen", "--spec", &spec, "--seed", "3", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_rejects_non_cover() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.txt"), "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n").unwrap();
    fs::write(dir.path().join("bad.txt"), "1\n").unwrap();
    fs::write(dir.path().join("good.txt"), "1\n2\n3\n").unwrap();
    let o = run(&["verify", "--in", &p(dir.path(), "g.txt"), "--cover", &p(dir.path(), "bad.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("edge 2 3 is uncovered"), "{}", stderr(&o));
    let o = run(&["verify", "--in", &p(dir.path(), "g.txt"), "--cover", &p(dir.path(), "good.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    fs::write(dir.path().join("split.txt"), "1\n3\n").unwrap();
    let o = run(&["verify", "--in", &p(dir.path(), "g.txt"), "--cover", &p(dir.path(), "split.txt")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn empty_modulator_gives_trivial_kernel() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.txt"), "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\nx epsilon 1/2\nx mode tw(1)\n").unwrap();
    let o = run(&["kernelize", "--in", &p(dir.path(), "g.txt")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc = String::from_utf8(o.stdout).unwrap();
    assert!(doc.starts_with("p edge 2 1\ne 1 2\n"), "{doc}");
    assert!(doc.contains("x case small-modulator"));
    assert!(doc.contains("x k-prime 0"));
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.txt"), "p edge 2 1\ne 1 2\n").unwrap();
    fs::write(dir.path().join("s.txt"), "3\n").unwrap();
    let o = run(&["kernelize", "--in", &p(dir.path(), "g.txt"), "--modulator", &p(dir.path(), "s.txt"), "--eps", "1/2", "--mode", "tw(1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("modulator vertex absent"));
    fs::write(dir.path().join("dup.txt"), "p edge 2 2\ne 1 2\ne 1 2\n").unwrap();
    let o = run(&["solve", "--in", &p(dir.path(), "dup.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn corrupt_transcript_is_an_assertion() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.txt"), "p edge 2 1\ne 1 2\nx epsilon 1\nx mode tw(1)\nx modulator 1\n").unwrap();
    fs::write(
        dir.path().join("k.txt"),
        "p edge 2 1\ne 1 2\nx bound 10\nx case large-modulator\nx epsilon 1/1\nx k-prime 6\nx kernel-modulator 1\nx mode tw(1)\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("t.jsonl"),
        "{\"event\":\"case-tag\",\"case\":\"large-modulator\",\"k_prime\":6}\n{\"event\":\"super-vertex-merge\",\"vertex\":99,\"members\":[98],\"label\":1}\n",
    )
    .unwrap();
    fs::write(dir.path().join("q.txt"), "1\n").unwrap();
    let d = dir.path();
    let o = run(&["lift", "--in", &p(d, "g.txt"), "--kernel", &p(d, "k.txt"), "--transcript", &p(d, "t.jsonl"), "--solution", &p(d, "q.txt")]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn solve_with_decomposition_and_constraints() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.txt"), "p edge 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n").unwrap();
    fs::write(dir.path().join("g.td"), "s td 4 2 5\nb 1 1 2\nb 2 2 3\nb 3 3 4\nb 4 4 5\n1 2\n2 3\n3 4\n").unwrap();
    let o = run(&["solve", "--in", &p(dir.path(), "g.txt"), "--decomposition", &p(dir.path(), "g.td")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "2\n3\n4\n");
    let o = run(&["solve", "--in", &p(dir.path(), "g.txt"), "--method", "oracle", "--require", "1"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1\n2\n3\n4\n");
    let o = run(&["solve", "--in", &p(dir.path(), "g.txt"), "--forbid", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = p(dir.path(), "r.json");
    let o = run(&["bench", "--suite", "savage", "--trials", "20", "--seed", "42", "--report", &report]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(table.contains("savage cover within 2·OPT"));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["rows"][0]["failures"], 0);
    assert!(r["rows"][0]["max_ratio"].as_f64().unwrap() <= 2.0);
    let o = run(&["bench", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}
