use std::path::{Path, PathBuf};
use std::process::Command;

use krasner_core::audit::audit_theorems;
use krasner_core::constructions::product;
use krasner_core::corpus::{self, build_zk_ring, serialize_structure};
use krasner_core::ideals::{enumerate_hyperideals, is_hyperideal, is_prime, radical_powers, radical_primes};
use krasner_core::s_theory::is_s_prime;
use krasner_core::{verify_axioms, ElemSet, Mode, SPrimaryReading};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn krasner(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_krasner")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes a structure into `dir` through `gen` and returns its path.
fn generate(dir: &TempDir, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path_str(&path)]);
    let run = krasner(&full);
    assert_eq!(run.code, 0, "{}", run.stderr);
    path
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap()
}

#[test]
fn gen_writes_the_canonical_form() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "z6.json", &["zk", "--k", "6"]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, serialize_structure(&build_zk_ring(6, 2, 2).unwrap()));
    let k33 = generate(&dir, "k33.json", &["example", "--which", "k33"]);
    assert_eq!(std::fs::read_to_string(k33).unwrap(), serialize_structure(&corpus::k33()));
    let run = krasner(&["gen", "zk", "--k", "5", "--m", "3", "--n", "3"]);
    assert_eq!(run.stdout, serialize_structure(&build_zk_ring(5, 3, 3).unwrap()));
}

#[test]
fn verify_matches_the_library() {
    let dir = TempDir::new().unwrap();
    let z6 = generate(&dir, "z6.json", &["zk", "--k", "6"]);
    let run = krasner(&["verify", path_str(&z6), "--check-identity", "--format", "json"]);
    assert_eq!(run.code, 0);
    let json = run.json();
    assert_eq!(json["structure"], "z6");
    let lib = verify_axioms(&build_zk_ring(6, 2, 2).unwrap(), true).unwrap();
    assert_eq!(json["report"], to_value(&lib));

    let k24 = generate(&dir, "k24.json", &["example", "--which", "k24"]);
    let run = krasner(&["verify", path_str(&k24), "--check-identity", "--format", "json"]);
    assert_eq!(run.code, 1);
    assert_eq!(run.json()["report"], to_value(&verify_axioms(&corpus::k24(), true).unwrap()));

    let k33 = generate(&dir, "k33.json", &["example", "--which", "k33"]);
    let run = krasner(&["verify", path_str(&k33)]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("distributive"), "{}", run.stdout);
}

#[test]
fn ideals_and_radicals_match_the_library() {
    let dir = TempDir::new().unwrap();
    let z8 = generate(&dir, "z8.json", &["zk", "--k", "8"]);
    let s = build_zk_ring(8, 2, 2).unwrap();

    let run = krasner(&["ideals", path_str(&z8), "--proper", "--format", "json"]);
    assert_eq!(run.code, 0);
    assert!(run.stderr.contains("weak"));
    assert_eq!(run.json()["report"], to_value(&enumerate_hyperideals(&s, Mode::Weak, true).unwrap()));

    let run = krasner(&["ideals", path_str(&z8), "--mode", "strict"]);
    assert!(run.stderr.is_empty(), "{}", run.stderr);
    assert_eq!(run.stdout.lines().count(), 4);

    let run = krasner(&["radical", path_str(&z8), "--ideal", "0,4", "--format", "json"]);
    assert_eq!(run.code, 0);
    let report = &run.json()["report"];
    let i = ElemSet::from([0, 4]);
    assert_eq!(report["powers"], to_value(&radical_powers(&s, i).unwrap()));
    assert_eq!(report["primes"], to_value(&radical_primes(&s, i, Mode::Weak).unwrap()));
}

#[test]
fn classify_matches_the_library() {
    let dir = TempDir::new().unwrap();
    let k24 = generate(&dir, "k24.json", &["example", "--which", "k24"]);
    let run = krasner(&["classify", path_str(&k24), "--ideal", "0", "--mult", "2,3", "--format", "json"]);
    assert_eq!(run.code, 0);
    let s = corpus::k24();
    let (i, m) = (ElemSet::from([0]), ElemSet::from([2, 3]));
    let report = &run.json()["report"];
    assert_eq!(report["hyperideal"], to_value(&is_hyperideal(&s, i, Mode::Weak)));
    assert_eq!(report["prime"], to_value(&is_prime(&s, i, Mode::Weak)));
    assert_eq!(report["s_prime"], to_value(&is_s_prime(&s, i, m, Mode::Weak)));
    assert_eq!(report["reading"], to_value(&SPrimaryReading::default()));

    let run = krasner(&["classify", path_str(&k24), "--ideal", "1,2", "--mult", "1"]);
    assert_eq!(run.code, 1, "not a hyperideal");
    assert!(run.stdout.contains("hyperideal  Fails"), "{}", run.stdout);
}

#[test]
fn constructions_report_and_write() {
    let dir = TempDir::new().unwrap();
    let z8 = generate(&dir, "z8.json", &["zk", "--k", "8"]);
    let z2 = generate(&dir, "z2.json", &["zk", "--k", "2"]);
    let z4 = generate(&dir, "z4.json", &["zk", "--k", "4"]);
    let k33 = generate(&dir, "k33.json", &["example", "--which", "k33"]);

    let out = dir.path().join("q.json");
    let run = krasner(&["quotient", path_str(&z8), "--ideal", "0,4", "--write", path_str(&out)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let q = corpus::load_file(&out).unwrap();
    assert_eq!(q.f_table(), build_zk_ring(4, 2, 2).unwrap().f_table());
    assert_eq!(krasner(&["verify", path_str(&out), "--check-identity"]).code, 0);

    let run = krasner(&["quotient", path_str(&k33), "--ideal", "0,2", "--format", "json"]);
    assert_eq!(run.code, 1);
    let report = &run.json()["report"];
    assert_eq!(report["built"], false);
    assert!(report["error"].as_str().unwrap().contains("overlap"));

    let out = dir.path().join("p.json");
    let run = krasner(&["product", path_str(&z2), path_str(&z4), "--write", path_str(&out)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let lib = product(&build_zk_ring(2, 2, 2).unwrap(), &build_zk_ring(4, 2, 2).unwrap()).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), serialize_structure(&lib));

    let z3 = generate(&dir, "z3.json", &["zk", "--k", "3", "--m", "3", "--n", "3"]);
    let run = krasner(&["product", path_str(&z2), path_str(&z3)]);
    assert_eq!(run.code, 2, "mismatched arities are a usage error");
}

#[test]
fn audit_matches_the_library_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    generate(&dir, "a.json", &["zk", "--k", "4"]);
    generate(&dir, "b.json", &["zk", "--k", "6"]);
    generate(&dir, "c.json", &["kq", "--k", "5", "--units", "1,4"]);
    let args = ["audit", path_str(dir.path()), "--mode", "weak", "--format", "json"];
    let first = krasner(&args);
    let second = krasner(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, second.stdout);

    let structures: Vec<_> = ["a", "b", "c"]
        .iter()
        .map(|f| corpus::load_file(&dir.path().join(format!("{f}.json"))).unwrap())
        .collect();
    let lib = audit_theorems(&structures, &[], Mode::Weak, SPrimaryReading::default()).unwrap();
    assert_eq!(first.json(), to_value(&lib));

    let run = krasner(&["audit", "--list"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout.lines().count(), 16);
}

#[test]
fn empty_audit_warns_but_succeeds() {
    let dir = TempDir::new().unwrap();
    let run = krasner(&["audit", path_str(dir.path()), "--theorems", "s-prime-colon"]);
    assert_eq!(run.code, 0);
    assert!(run.stderr.contains("empty corpus"));
    assert!(run.stdout.contains("hypothesis-not-met") || run.stdout.contains("HypothesisNotMet"), "{}", run.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let k24 = generate(&dir, "k24.json", &["example", "--which", "k24"]);
    let run = krasner(&["classify", path_str(&k24), "--ideal", "0,9"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("unknown label \"9\""), "{}", run.stderr);

    assert_eq!(krasner(&["verify", "/nonexistent/structure.json"]).code, 2);
    assert_eq!(krasner(&["frobnicate"]).code, 2);
    assert_eq!(krasner(&["audit", "--theorems", "no-such-theorem"]).code, 2);
    assert_eq!(krasner(&["gen", "kq", "--k", "6", "--units", "1,2"]).code, 2);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"name\": 3}").unwrap();
    assert_eq!(krasner(&["verify", path_str(&broken)]).code, 2);
}

#[test]
fn size_limit_is_configurable() {
    let dir = TempDir::new().unwrap();
    let z12 = generate(&dir, "z12.json", &["zk", "--k", "12"]);
    assert_eq!(krasner(&["verify", path_str(&z12)]).code, 2);
    assert_eq!(krasner(&["verify", path_str(&z12), "--max-verify-size", "12"]).code, 0);
}
