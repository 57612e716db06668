use std::fs;
use std::process::{Command, Output};

fn crosslat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crosslat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_json() {
    let o = crosslat(&["build", "--graph", "path A 4", "--j0", "{2,3}", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 11);
    assert_eq!(v["elements"][0]["mask"], "0x0");
}

#[test]
fn export_dot_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.dot");
    let o = crosslat(&[
        "export-dot",
        "--graph",
        "path A 3",
        "--j0",
        "{2}",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 9);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.conf");
    fs::write(&cfg, "# charpoly over small paths\nfamily = path B\nn_max = 3\nformat = csv\n").unwrap();
    let o = crosslat(&["scan", "charpoly", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let body = stdout(&o);
    assert_eq!(body.lines().count(), 1 + 2 + 4 + 8);
    assert!(body.lines().nth(1).unwrap().starts_with("path B 1,"));
    let o = crosslat(&["scan", "charpoly", "--config", cfg.to_str().unwrap(), "--n-max", "2"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 2 + 4);
    fs::write(&cfg, "n_max = lots\n").unwrap();
    assert_eq!(crosslat(&["scan", "charpoly", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(crosslat(&["analyze", "--graph", "path A 4", "--j0", "{2,3}"]).status.code(), Some(0));
    assert_eq!(crosslat(&["scan", "theorems", "--n-max", "4"]).status.code(), Some(0));
    // the all-singletons predicate fails on the 4-cycle
    assert_eq!(crosslat(&["scan", "circuit", "--n-max", "4"]).status.code(), Some(4));
    assert_eq!(crosslat(&["scan", "circuit", "--n-min", "5", "--n-max", "6"]).status.code(), Some(0));
    assert_eq!(crosslat(&["build", "--graph", "path A 4", "--j0", "{7}"]).status.code(), Some(2));
    assert_eq!(crosslat(&["build", "--graph", "path A 25"]).status.code(), Some(3));
    assert_eq!(crosslat(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/out.txt");
    let o = crosslat(&["build", "--graph", "path A 2", "--out", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scan_json_summary() {
    let o = crosslat(&["scan", "flags", "--n-max", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["disagree"], 0);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["criterion"].is_string()));
}
