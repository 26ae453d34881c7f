use std::path::Path;
use std::process::{Command, Output};

use frobknot::frobenius::{a5, A5Params};
use serde_json::Value;

fn frobknot(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frobknot"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("FROBKNOT_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_prints_summary_and_exits_zero() {
    let o = frobknot(&["verify", "thm1.2", "--p", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("64 tables, 0 counterexamples"));

    let o = frobknot(&["verify", "thm1.2", "--zbound", "1", "--json"], None);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["candidates"], 729);
}

#[test]
fn json_is_stable_across_thread_counts() {
    for args in [
        vec!["homology", "builder:trefoil", "--normalize", "--json"],
        vec!["verify", "noncomm", "--p", "3", "--json"],
        vec!["verify", "prop3.4", "--json"],
    ] {
        let one = frobknot(&args, Some("1"));
        let four = frobknot(&args, Some("4"));
        assert_eq!(one.status.code(), Some(0), "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_an_input_error() {
    assert_eq!(
        frobknot(&["bracket", "builder:hopf"], Some("many")).status.code(),
        Some(2)
    );
}

#[test]
fn homology_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let pd = write(dir.path(), "hopf.pd", "# positive Hopf link\nX 1 3 2 4\nX 3 1 4 2\n");
    let o = frobknot(&["homology", &pd, "--a5", "0,1", "--ring", "Q", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let total: u64 = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["free_rank"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 4);

    // the same algebra from a file, reread over F2
    let alg = serde_json::to_string(&a5(A5Params { h: 0, t: 1 }).to_json()).unwrap();
    let alg = write(dir.path(), "lee.json", &alg);
    let o = frobknot(&["homology", &pd, "--algebra", &alg, "--ring", "Fp:2"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total rank: 4"));

    let bad = write(dir.path(), "bad.pd", "X 1 2 3\n");
    assert_eq!(frobknot(&["homology", &bad], None).status.code(), Some(2));
    assert_eq!(frobknot(&["homology", "/no/such/file.pd"], None).status.code(), Some(2));
}

#[test]
fn unoriented_normalization_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let pd = write(dir.path(), "d.pd", "X 4 1 3 2 / X 3 1 4 2");
    assert_eq!(frobknot(&["homology", &pd, "--normalize"], None).status.code(), Some(2));
    assert_eq!(frobknot(&["homology", &pd], None).status.code(), Some(0));
}

#[test]
fn polynomial_algebra_file_is_rejected_with_hint() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(
        dir.path(),
        "a5.json",
        r#"{"ring": "Z[h,t]", "rank": 2, "mult": [], "comult": []}"#,
    );
    let o = frobknot(&["homology", "builder:hopf", "--algebra", &alg], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--a5"));
}

#[test]
fn algebra_reports() {
    let dir = tempfile::tempdir().unwrap();
    let alg = serde_json::to_string(&a5(A5Params { h: 1, t: 2 }).to_json()).unwrap();
    let alg = write(dir.path(), "a5.json", &alg);
    let o = frobknot(&["check-algebra", &alg, "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["frobenius_relation"], true);
    assert_eq!(v["unit_ok"], true);

    let o = frobknot(&["relations", &alg], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("frobenius: true"));
}

#[test]
fn classify_tables() {
    let dir = tempfile::tempdir().unwrap();
    // e1e1 = e1, e2e2 = e2: two orthogonal idempotents
    let t = write(
        dir.path(),
        "t.json",
        r#"{"ring": {"kind": "Integers"}, "commutative": true,
            "products": {"e1e1": ["1", "0"], "e1e2": ["0", "0"], "e2e2": ["0", "1"]}}"#,
    );
    let o = frobknot(&["classify", &t, "--p", "3", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["class"].as_str().unwrap().starts_with("m6"));

    let nc = write(
        dir.path(),
        "nc.json",
        r#"{"ring": {"kind": "PrimeField", "p": 2}, "commutative": false,
            "products": {"e1e1": [0, 0], "e1e2": [0, 0], "e2e1": [1, 0], "e2e2": [0, 1]}}"#,
    );
    let o = frobknot(&["classify", &nc, "--p", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("nc_left"));
}

#[test]
fn bracket_outputs() {
    let o = frobknot(&["bracket", "builder:hopf", "--json"], None);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bracket"], "-A^4 - A^-4");
}
