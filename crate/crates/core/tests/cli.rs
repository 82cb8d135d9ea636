//! End-to-end runs of the `gcx` binary: files written, exit codes, reports.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gcx::{BasisSlice, Parities};

fn gcx(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcx"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const PAIR_ARGS: [&str; 8] = ["--v1", "2", "--e1", "1", "--v2", "2", "--e2", "1"];

#[test]
fn enumerate_then_diff() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["enumerate", "--c", "2", "--d", "2", "--connected", "--out", "s.slice"];
    args.extend(PAIR_ARGS);
    let o = gcx(dir.path(), &args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("s.slice")).unwrap();
    let slice = BasisSlice::from_text(&text).unwrap();
    assert_eq!(slice.len(), 1);
    assert_eq!(slice.to_text().unwrap(), text);

    let o = gcx(dir.path(), &["diff", "--slice", "s.slice", "--op", "full", "--out", "d.mtx"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mtx = fs::read_to_string(dir.path().join("d.mtx")).unwrap();
    assert!(mtx.starts_with("%%MatrixMarket matrix coordinate integer general"));
    let sidecar = fs::read_to_string(dir.path().join("d.mtx.sidecar")).unwrap();
    for key in ["domain", "codomain0", "codomain1"] {
        assert!(sidecar.contains(key), "{sidecar}");
    }
    let rows: usize = ["d.mtx.codomain0.slice", "d.mtx.codomain1.slice"]
        .iter()
        .map(|f| BasisSlice::from_text(&fs::read_to_string(dir.path().join(f)).unwrap()).unwrap().len())
        .sum();
    let size_line = mtx.lines().find(|l| !l.starts_with('%')).unwrap();
    let dims: Vec<usize> = size_line.split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert_eq!((dims[0], dims[1]), (rows, 1));
}

#[test]
fn empty_bidegree_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = gcx(
        dir.path(),
        &["enumerate", "--c", "1", "--d", "1", "--v1", "1", "--e1", "3", "--v2", "1", "--e2", "0", "--out", "e.slice"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("e.slice")).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(BasisSlice::from_text(&text).unwrap().is_empty());
}

#[test]
fn verify_checks_report_through_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = gcx(dir.path(), &["verify", "relations", "--c", "2", "--d", "2", "--json", "r.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["status"], "ok");
    assert_eq!(report["exit_code"], 0);
    assert_eq!(report["result"]["passed"], true);
    assert!(report["config"]["max_basis_size"].is_u64());

    let small = "v1+v2<=3,e1+e2<=3";
    let o = gcx(dir.path(), &["verify", "d2", "--c", "2", "--d", "2", "--window", small, "--complex", "geq2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    // The full complex does not square to zero under the literal antenna
    // weight once the window reaches 2,1,2,1; the failing element is named
    // on stderr.
    let o = gcx(dir.path(), &["verify", "d2", "--c", "2", "--d", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("key="), "{}", stderr(&o));

    let o = gcx(dir.path(), &["verify", "cancellation", "--c", "1", "--d", "1", "--seed", "0x5eed"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let o = gcx(dir.path(), &["verify", "class", "A", "--c", "2", "--d", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn betti_report_has_the_two_classes() {
    let dir = tempfile::tempdir().unwrap();
    let o = gcx(
        dir.path(),
        &["betti", "--window", "v1+v2<=4,e1+e2<=4", "--c", "2", "--d", "2", "--report", "b.txt", "--json", "b.json"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("b.txt")).unwrap();
    let total: usize = text
        .lines()
        .filter(|l| l.ends_with("safe=1"))
        .map(|l| l.split_whitespace().rev().nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 2, "{text}");
}

#[test]
fn sym_writes_combinations() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.graph"), "p=2;v=3;E=0-1,1-2,0-2;s=+1\n").unwrap();
    let o = gcx(dir.path(), &["sym", "--g1", "t.graph", "--g2", "t.graph", "--out", "s.txt"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lc = gcx::pair::combination_from_text(&fs::read_to_string(dir.path().join("s.txt")).unwrap(), Parities::new(2, 2)).unwrap();
    assert!(lc.is_zero(), "the triangle is a zero graph when edges are ordered");

    fs::write(dir.path().join("t1.graph"), "p=1;v=3;E=0-1,1-2,0-2;s=+1\n").unwrap();
    let o = gcx(dir.path(), &["sym", "--g1", "t1.graph", "--g2", "t1.graph", "--out", "s1.txt"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("s1.txt")).unwrap();
    let lc = gcx::pair::combination_from_text(&text, Parities::new(1, 1)).unwrap();
    assert!(!lc.is_zero());
    assert_eq!(gcx::pair::combination_to_text(&lc, Parities::new(1, 1)).unwrap(), text);
}

#[test]
fn failure_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&gcx(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&gcx(dir.path(), &["diff", "--slice", "missing.slice", "--op", "full", "--out", "x"])), 4);

    fs::write(dir.path().join("bad.slice"), "c=2 d=2 bidegree=nonsense flags=conn:0,val:all,loops:0\n").unwrap();
    assert_eq!(code(&gcx(dir.path(), &["diff", "--slice", "bad.slice", "--op", "full", "--out", "x"])), 3);

    fs::write(dir.path().join("tight.conf"), "max_raw_candidates=1\n").unwrap();
    let mut args = vec!["--config", "tight.conf", "enumerate", "--c", "2", "--d", "2", "--out", "s.slice"];
    args.extend(PAIR_ARGS);
    let o = gcx(dir.path(), &args);
    assert_eq!(code(&o), 5, "{}", stderr(&o));
}
