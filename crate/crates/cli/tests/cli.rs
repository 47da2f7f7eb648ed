use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratcurves")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

#[test]
fn strata_with_a_target() {
    let out = run(&["strata", "--tails", "0", "--degree", "2", "--target", "5:2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let strata = v["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 2);
    let dims: Vec<i64> = strata.iter().map(|s| s["dim"].as_i64().unwrap()).collect();
    let codims: Vec<i64> = strata.iter().map(|s| s["codim"].as_i64().unwrap()).collect();
    assert_eq!(dims, [9, 8]);
    assert_eq!(codims, [0, 1]);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
    assert_eq!(v["seed"], 0);
}

#[test]
fn single_stratum_and_unstable_request() {
    let out = run(&["strata", "--tails", "0", "--degree", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["strata"].as_array().unwrap().len(), 1);

    let bad = run(&["strata", "--tails", "2", "--degree", "0"]);
    assert_eq!(code(&bad), 2);
    assert!(bad.stdout.is_empty());
    assert_eq!(code(&run(&["strata", "--tails", "0", "--degree", "2", "--target", "3:1,1,1"])), 2);
    assert_eq!(code(&run(&["strata", "--tails", "0", "--degree", "2", "--target", "nonsense"])), 2);
}

#[test]
fn dot_output_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("p.dot");
    let out = run(&["strata", "--tails", "0", "--degree", "3", "--target", "5:2", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let golden = include_str!("golden/strata_0_3_x5_2.dot");
    assert_eq!(fs::read_to_string(&dot).unwrap(), golden);
    let printed = run(&["strata", "--tails", "0", "--degree", "3", "--target", "5:2", "--format", "dot"]);
    assert_eq!(String::from_utf8(printed.stdout).unwrap(), golden);
    assert!(golden.starts_with("digraph") && golden.matches(" -> ").count() == 3);
    assert_eq!(code(&run(&["equiv", "--degree", "2", "--bound", "2", "--format", "dot"])), 2);
}

#[test]
fn equiv_reports() {
    let v = json(&run(&["equiv", "--degree", "4", "--bound", "1"]));
    assert_eq!(v["element_count"], 2);
    assert_eq!(v["class_count"], 1);
    let chains = v["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 2);
    for c in chains {
        assert_eq!(c["verified"], true);
        assert_eq!(c["ends_at_path"], true);
        assert_eq!(c["steps"].as_array().unwrap().len(), 2 * c["moves"].as_u64().unwrap() as usize);
    }

    let v = json(&run(&["equiv", "--degree", "2", "--bound", "2"]));
    assert_eq!((v["element_count"].as_u64(), v["class_count"].as_u64()), (Some(2), Some(1)));
    let v = json(&run(&["equiv", "--degree", "1", "--bound", "1"]));
    assert_eq!((v["element_count"].as_u64(), v["class_count"].as_u64()), (Some(1), Some(1)));

    assert_eq!(code(&run(&["equiv", "--degree", "5", "--bound", "1", "--cap", "3"])), 2);
    assert_eq!(code(&run(&["equiv", "--degree", "2", "--bound", "0"])), 2);
}

fn write_form(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn line_audits_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let quadric = write_form(
        dir.path(),
        "q.json",
        r#"{"nvars":4,"degree":2,"terms":[{"exp":[1,0,0,1],"coef":1},{"exp":[0,1,1,0],"coef":-1}]}"#,
    );
    let out = run(&["audit-lines", "--n", "3", "--d", "2", "--p", "5", "--phi", &quadric]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["report"]["verdict"], "PASS");
    assert_eq!(v["report"]["points"].as_array().unwrap().len(), 36);

    let cone = write_form(
        dir.path(),
        "c.json",
        r#"{"nvars":4,"degree":2,"terms":[{"exp":[1,1,0,0],"coef":1},{"exp":[0,0,2,0],"coef":-1}]}"#,
    );
    let out = run(&["audit-lines", "--n", "3", "--d", "2", "--p", "5", "--phi", &cone]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["report"]["failures"], serde_json::json!([[0, 0, 0, 1]]));

    let wrong = write_form(dir.path(), "w.json", r#"{"nvars":3,"degree":2,"terms":[]}"#);
    assert_eq!(code(&run(&["audit-lines", "--n", "3", "--d", "2", "--p", "5", "--phi", &wrong])), 2);
    assert_eq!(code(&run(&["audit-lines", "--n", "3", "--d", "2", "--p", "5"])), 2);
    assert_eq!(code(&run(&["audit-lines", "--n", "3", "--d", "2", "--p", "4", "--random"])), 2);
    assert_eq!(code(&run(&["audit-lines", "--n", "3", "--d", "2", "--p", "5", "--random", "--budget", "10"])), 3);
}

#[test]
fn tuple_audits() {
    let out = run(&["audit-tuples", "--n", "3", "--d", "2", "--p", "7", "--samples", "500", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["report"]["fraction"].as_f64().unwrap() <= 0.01);
    assert_eq!(v["seed"], 1);

    let out = run(&["audit-tuples", "--n", "3", "--d", "1", "--p", "7", "--samples", "200", "--seed", "9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["members"], 0);
    assert_eq!(code(&run(&["audit-tuples", "--n", "3", "--d", "3", "--p", "7"])), 2);
}

#[test]
fn reports_are_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let runs = [
        vec!["audit-lines", "--n", "3", "--d", "2", "--p", "7", "--random", "--seed", "12"],
        vec!["audit-tuples", "--n", "3", "--d", "2", "--p", "5", "--samples", "100", "--seed", "12"],
        vec!["equiv", "--degree", "5", "--bound", "2"],
        vec!["strata", "--tails", "1", "--degree", "3", "--target", "6:2,2"],
    ];
    for args in &runs {
        for dir in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--out", dir.path().to_str().unwrap()]);
            let out = run(&full);
            assert!(code(&out) <= 1, "{args:?}");
        }
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 4);
    for name in names {
        let x = fs::read(a.path().join(&name)).unwrap();
        assert_eq!(x, fs::read(b.path().join(&name)).unwrap(), "{name:?}");
        serde_json::from_slice::<Value>(&x).unwrap();
    }
    let other = run(&["audit-lines", "--n", "3", "--d", "2", "--p", "7", "--random", "--seed", "13"]);
    let same = run(&["audit-lines", "--n", "3", "--d", "2", "--p", "7", "--random", "--seed", "12"]);
    assert_ne!(json(&other)["form"], json(&same)["form"]);
}

#[test]
fn inspect_a_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_form(
        dir.path(),
        "g.json",
        r#"{"vertices":[{"id":"a","beta":0},{"id":"b","beta":1}],"edges":[["a","b"]],"tails":[{"at":"a","label":1},{"at":"a","label":2}]}"#,
    );
    let v = json(&run(&["inspect", "--graph", &g, "--target", "5:2"]));
    assert_eq!(v["stable"], true);
    assert_eq!(v["invariants"]["diameter"], 2);
    // 4·1 + 2 tails − 1 edge + 4 − 3
    assert_eq!(v["dim"], 6);
    let broken = write_form(dir.path(), "b.json", r#"{"vertices":[{"id":"a","beta":0}],"edges":[["a","z"]],"tails":[]}"#);
    assert_eq!(code(&run(&["inspect", "--graph", &broken])), 2);
    assert_eq!(code(&run(&["inspect", "--graph", "/nonexistent/g.json"])), 2);
}
