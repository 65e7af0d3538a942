use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const C4: &str = "c square\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";
// C4 with vertices renamed 1->3, 2->1, 3->4, 4->2
const C4_RELABELLED: &str = "p edge 4 4\ne 3 1\ne 1 4\ne 4 2\ne 2 3\n";
const P4: &str = "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_certcanon")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn edge_lines(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| l.starts_with("e ")).map(String::from).collect()
}

#[test]
fn canon_c4_and_k3() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.col", C4);
    let o = run(&["canon", s(&c4)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(edge_lines(&o), ["e 1 3", "e 1 4", "e 2 3", "e 2 4"]);

    let k3 = write(&dir, "k3.col", K3);
    let o = run(&["canon", s(&k3)]);
    assert_eq!(edge_lines(&o), ["e 1 2", "e 1 3", "e 2 3"]);
}

#[test]
fn missing_file_and_bad_input_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["canon", "/nonexistent/graph.col"]).status.code(), Some(2));
    let bad = write(&dir, "bad.col", "p edge 2 1\ne 1 5\n");
    assert_eq!(run(&["canon", s(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn prove_then_check_with_both_strategies_and_backends() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.col", C4);
    for strategy in ["during", "post"] {
        let proof = dir.path().join(format!("c4.{strategy}.proof"));
        let o = run(&["canon", s(&c4), "--prove", strategy, "-o", s(&proof), "--stats"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("proof_bytes"));
        for db in ["flat", "trie"] {
            let o = run(&["check", s(&c4), s(&proof), "--db", db]);
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            assert_eq!(edge_lines(&o), ["e 1 3", "e 1 4", "e 2 3", "e 2 4"]);
        }
    }
}

#[test]
fn default_proof_path_and_json() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.col", C4);
    let o = run(&["canon", s(&c4), "--prove", "post", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["m"], 4);
    assert_eq!(v["canonical_edges"], serde_json::json!([[1, 3], [1, 4], [2, 3], [2, 4]]));
    let proof = dir.path().join("c4.col.proof");
    assert_eq!(v["proof_bytes"], fs::metadata(&proof).unwrap().len());
    assert!(v["times_ms"]["prove"].is_number());

    let o = run(&["check", s(&c4), s(&proof), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "accepted");
}

#[test]
fn check_rejects_foreign_and_corrupted_proofs() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.col", C4);
    let k3 = write(&dir, "k3.col", K3);
    let k3_proof = dir.path().join("k3.proof");
    assert_eq!(run(&["canon", s(&k3), "--prove", "post", "-o", s(&k3_proof)]).status.code(), Some(0));
    let o = run(&["check", s(&c4), s(&k3_proof)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n-mismatch"));

    let c4_proof = dir.path().join("c4.proof");
    run(&["canon", s(&c4), "--prove", "during", "-o", s(&c4_proof)]);
    let mut bytes = fs::read(&c4_proof).unwrap();
    bytes.truncate(bytes.len() - 6);
    fs::write(&c4_proof, &bytes).unwrap();
    assert_eq!(run(&["check", s(&c4), s(&c4_proof)]).status.code(), Some(1));

    assert_eq!(run(&["check", s(&c4), "/nonexistent.proof"]).status.code(), Some(2));
}

#[test]
fn iso_decisions() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.col", C4);
    let c4r = write(&dir, "c4r.col", C4_RELABELLED);
    let p4 = write(&dir, "p4.col", P4);
    let k3 = write(&dir, "k3.col", K3);

    let o = run(&["iso", s(&c4), s(&c4r)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("isomorphic"));
    assert!(out.contains("c map "));

    let o = run(&["iso", s(&c4), s(&p4)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("non-isomorphic"));

    assert_eq!(run(&["iso", s(&k3), s(&k3)]).status.code(), Some(0));
    assert_eq!(run(&["iso", s(&k3), s(&c4)]).status.code(), Some(1));
}

#[test]
fn iso_certify_writes_checkable_proofs() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.col", C4);
    let p4 = write(&dir, "p4.col", P4);
    let certs = dir.path().join("certs");
    let o = run(&["iso", s(&c4), s(&p4), "--certify", s(&certs), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "non-isomorphic");
    let first = certs.join("first.proof");
    let second = certs.join("second.proof");
    assert_eq!(run(&["check", s(&c4), s(&first)]).status.code(), Some(0));
    assert_eq!(run(&["check", s(&p4), s(&second)]).status.code(), Some(0));
}
