use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use smorph::corpus::{bundled_corpus, bundled_dir, load_dir, load_file, write_dir};
use smorph::format::{parse_algebra_file, render};
use smorph::mutate_entry;

fn smorph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smorph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn bundled(name: &str) -> String {
    bundled_dir().join(format!("{name}.alg")).display().to_string()
}

#[test]
fn bundled_files_match_generated_corpus() {
    let on_disk = load_dir(&bundled_dir()).unwrap();
    let generated = bundled_corpus();
    assert_eq!(on_disk.len(), generated.len());
    for gen in &generated {
        assert!(on_disk.iter().any(|d| d.name == gen.name), "{} missing", gen.name);
        let text = fs::read_to_string(bundled_dir().join(format!("{}.alg", gen.name))).unwrap();
        assert_eq!(text, render(&gen.doc), "{} is stale", gen.name);
    }
}

#[test]
fn verify_bundled_corpus_passes() {
    let o = smorph(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("29 instances"));
    assert!(stdout(&o).trim_end().ends_with("0 failed"));
}

#[test]
fn verify_empty_directory_warns_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let o = smorph(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("0 instances"));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_reports_mutated_table_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let luk = load_file(Path::new(&bundled("luk-2"))).unwrap();
    // mul(1/2, 1) := 0 breaks the neutral top.
    let broken = mutate_entry(&luk, 2, 5, 0).unwrap();
    fs::write(dir.path().join("broken.alg"), render(&broken)).unwrap();
    let cx = dir.path().join("cx");
    let o = smorph(&[
        "--format",
        "machine",
        "verify",
        dir.path().to_str().unwrap(),
        "--counterexamples",
        cx.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out
        .lines()
        .find(|l| l.starts_with("axioms "))
        .expect("axioms line");
    assert!(line.contains(" fail "), "{line}");
    assert!(line.contains("args="), "{line}");
    assert!(fs::read_dir(&cx).unwrap().count() > 0);
}

#[test]
fn parse_error_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    fs::write(&path, "algebra x\nsize 2\nsignature f/1\ntable f\n0 5\n").unwrap();
    let o = smorph(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
}

#[test]
fn product_grid_is_rejected() {
    let o = smorph(&["gen-chain", "--kind", "product", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn lattice_cap_exits_3() {
    let o = smorph(&["--cap-lattice", "3", "conlat", &bundled("luk-3")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap is 3"));
}

#[test]
fn generated_chain_round_trips_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.alg");
    let o = smorph(&["gen-chain", "--kind", "sum", "--components", "L2,G1", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&path).unwrap();
    let doc = parse_algebra_file(&text).unwrap();
    assert_eq!(render(&doc), text);
    assert_eq!(doc.algebra.size(), 4);

    let o = smorph(&["--format", "machine", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("axioms "));
    let o = smorph(&["check", "--class", "MV", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["conlat", "--base", "luk-3"],
        vec!["si", "goedel-2-tau-local"],
        vec!["endos", "bool-square"],
        vec!["filters", "sum-luk2-goedel1"],
        vec!["verify"],
    ] {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        if let Some(last) = args.last_mut() {
            if last != "verify" {
                *last = bundled(last);
            }
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = smorph(&args);
        let b = smorph(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn jobs_do_not_change_verify_output() {
    let one = smorph(&["--jobs", "1", "verify", "--only", "axioms,congruence-oracle"]);
    let four = smorph(&["--jobs", "4", "verify", "--only", "axioms,congruence-oracle"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn embed_diagonal_writes_a_valid_target() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("target.alg");
    let o = smorph(&["embed-diagonal", &bundled("goedel-2-tau-local"), "-o", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("target-si=true"));
    let o = smorph(&["check", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn written_corpus_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = bundled_corpus();
    write_dir(dir.path(), &corpus).unwrap();
    let back = load_dir(dir.path()).unwrap();
    assert_eq!(back.len(), corpus.len());
    for inst in &corpus {
        let found = back.iter().find(|b| b.name == inst.name).expect("instance written");
        assert_eq!(render(&found.doc), render(&inst.doc));
    }
}

#[test]
fn closed_stdout_is_not_a_crash() {
    use std::io::{BufRead, BufReader};
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_smorph"))
        .arg("verify")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut first = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut first).unwrap();
    let status = child.wait().unwrap();
    assert!(first.starts_with("axioms"));
    assert_ne!(status.code(), Some(101), "panicked on a closed pipe");
}
