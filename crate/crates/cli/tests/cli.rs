use std::path::Path;
use std::process::{Command, Output};

use superspencer::expect::{default_tables_dir, load_tables};
use superspencer::RunReport;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superspencer")).args(args).env_remove("SUPERSPENCER_TABLES").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn every_expectation_cites_its_source() {
    let tables = load_tables(&default_tables_dir()).unwrap();
    assert!(tables.len() >= 8);
    for t in &tables {
        assert!(!t.expectations.is_empty(), "{}", t.path.display());
        for e in &t.expectations {
            assert!(e.source.starts_with("Ch."), "{}: {} cites {:?}", t.path.display(), e.case, e.source);
        }
    }
}

#[test]
fn table_without_source_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.json"), r#"{"title": "t", "expectations": [{"case": "pe:2", "k": 1, "dim": 0, "source": " "}]}"#).unwrap();
    assert!(load_tables(dir.path()).is_err());
    let o = bin(&["verify", "--case", "pe:2", "--tables", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trips_and_rejects_unknown_fields() {
    let o = bin(&["run", "--case", "cpe:2", "--k", "1..2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.schema, superspencer::SCHEMA);
    assert_eq!(r.cohomology.len(), 2);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["extra"] = serde_json::json!(1);
    assert!(serde_json::from_value::<RunReport>(v).is_err());
}

#[test]
fn csv_row_count_matches_order_range() {
    let o = bin(&["run", "--case", "sl-std:1:3", "--k", "1..4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 1 + 4);
    assert!(s.lines().skip(1).all(|l| l.starts_with("sl-std:1:3,")));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = bin(&["run", "--case", "pe-ext:3:1:3", "--case", "spe:2", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn verify_passes_for_pe3() {
    let o = bin(&["verify", "--case", "pe:3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pass pe:3 k=1"));
}

fn write_table(dir: &Path, body: &str) {
    std::fs::write(dir.join("t.json"), format!(r#"{{"title": "injected", "expectations": [{body}]}}"#)).unwrap();
}

#[test]
fn injected_fault_yields_a_diff_and_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    write_table(dir.path(), r#"{"case": "spe:3", "k": 1, "factors": [{"weight": "e1", "dim": 6}, {"weight": "2e1"}], "source": "injected"}"#);
    let o = bin(&["verify", "--case", "spe:3", "--tables", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    let d = &r.verification[0].diffs[0];
    assert_eq!(d.field, "factors");
    assert_eq!(d.missing, vec!["2e1".to_string()]);
    assert!(d.unexpected.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["run", "--case", "nonsense:1"][..],
        &["run", "--case", "pe:2", "--k", "0..2"],
        &["run"],
        &["frobnicate"],
        &["verify", "--case", "pe:17"],
        &["dump-matrix", "--case", "pe:2", "--k", "2", "--kmax", "0"],
        &["dump-matrix", "--case", "pe:2", "--k", "1", "--s", "5"],
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn dump_matrix_writes_triplets() {
    let o = bin(&["dump-matrix", "--case", "pe:2", "--k", "1", "--s", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    let mut lines = s.lines();
    let head: Vec<usize> = lines.next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    let (rows, cols, nnz) = (head[0], head[1], head[2]);
    // pe(2): g_0 (x) g_-1^* -> g_-1 (x) E^2(g_-1^*), g_-1 of superdim (2|2)
    assert_eq!(cols, 8 * 4);
    assert_eq!(rows, 4 * (1 + 3 + 2 * 2));
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), nnz);
    for l in body {
        let f: Vec<&str> = l.split(' ').collect();
        assert!(f[0].parse::<usize>().unwrap() < rows && f[1].parse::<usize>().unwrap() < cols);
        let (p, q) = f[2].split_once('/').unwrap();
        assert!(p.parse::<i64>().unwrap() != 0 && q.parse::<u64>().unwrap() > 0);
    }
}

#[test]
fn list_cases_names_the_registry() {
    let o = bin(&["list-cases"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), superspencer::registry().len());
    assert!(s.contains("sl-std:2:2"));
}

#[test]
fn thread_variable_is_checked() {
    let o = Command::new(env!("CARGO_BIN_EXE_superspencer")).args(["list-cases"]).env("SUPERSPENCER_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_superspencer")).args(["run", "--case", "pe:2"]).env("SUPERSPENCER_THREADS", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}
