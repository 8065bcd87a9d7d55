use std::path::Path;
use std::process::{Command, Output};

fn ctrlgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctrlgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_is_reproducible() {
    let a = ctrlgraph(&["gen", "--n", "7", "--seed", "5"]);
    let b = ctrlgraph(&["gen", "--n", "7", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("7\n"));
    let bits = ctrlgraph(&["gen", "--n", "4", "--format", "bitstring", "--model", "gnpq", "--q", "1"]);
    assert!(stdout(&bits).trim().ends_with(";1111"));
}

#[test]
fn wigner_gen_rejects_bitstring() {
    let o = ctrlgraph(&["gen", "--model", "wigner", "--n", "4", "--format", "bitstring", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_reports_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p3.txt", "3\n0 1 0\n1 0 1\n0 1 0\n");
    let o = ctrlgraph(&["check", "--matrix", &path, "--pbh"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["controllable"], false);
    assert_eq!(v["verdict"]["rank"], 2);
    assert_eq!(v["pbh"]["controllable"], false);
    assert_eq!(v["simple_spectrum"], true);

    let b = write(dir.path(), "b.txt", "1\n0\n0\n");
    let o = ctrlgraph(&["check", "--matrix", &path, "--vector", &b, "--exact"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["controllable"], true);
    assert_eq!(v["verdict"]["certificate"], "exact-rational");

    let bits = write(dir.path(), "g.txt", "1:");
    let o = ctrlgraph(&["check", "--matrix", &bits]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["controllable"], true);
}

#[test]
fn check_errors_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "2\n0 1\n0 0\n");
    assert_eq!(ctrlgraph(&["check", "--matrix", &bad]).status.code(), Some(2));
    let m = write(dir.path(), "m.txt", "2\n0 1\n1 0\n");
    let v = write(dir.path(), "v.txt", "1\n");
    assert_eq!(ctrlgraph(&["check", "--matrix", &m, "--vector", &v]).status.code(), Some(2));
    assert_eq!(ctrlgraph(&["check", "--matrix", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_exact_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = ctrlgraph(&["sweep", "--n", "1,4,8", "--trials", "30", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,trials,controllable,fraction,ci_lo,ci_hi");
    assert!(lines[1].starts_with("1,30,30,1,"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn config_overrides_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"experiment":"dot-profile","n_list":[5],"trials":4,"master_seed":1}"#,
    );
    let run = |threads: &str| {
        let o = ctrlgraph(&["sweep", "--config", &cfg, "--n", "6,9", "--trials", "25", "--seed", "8", "--threads", threads]);
        assert!(o.status.success());
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert!(one.starts_with("n,trial,min_dot,skipped\n6,0,"));
    assert_eq!(one.lines().count(), 51);
}

#[test]
fn eig_and_smallball_outputs() {
    let o = ctrlgraph(&["eig", "--n", "20", "--trials", "2", "--seed", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("n,trial,eig_index,incompressible,sparse_dist,rlcd_lower\n"));
    assert_eq!(s.lines().count(), 41);

    let o = ctrlgraph(&["smallball", "--trials", "500", "--seed", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("label,t,empirical,bound\nflat-1,0.001,"));
    for line in s.lines().skip(1) {
        let f: Vec<f64> = line.split(',').skip(2).map(|x| x.parse().unwrap()).collect();
        assert!(f[0] <= f[1] + 1e-12, "{line}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(ctrlgraph(&["sweep", "--experiment", "nope"]).status.code(), Some(2));
    assert_eq!(ctrlgraph(&["eig", "--n", "10"]).status.code(), Some(2));
    assert_eq!(ctrlgraph(&["sweep", "--n", "3,2"]).status.code(), Some(2));
    assert_eq!(ctrlgraph(&["sweep", "--experiment", "eig-structure"]).status.code(), Some(2));
    assert_eq!(ctrlgraph(&["enumerate", "--n", "6"]).status.code(), Some(2));
    assert_eq!(ctrlgraph(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", r#"{"experiment":"godsil-sweep"}"#);
    assert_eq!(ctrlgraph(&["sweep", "--config", &cfg]).status.code(), Some(2));
    // a directory where the output file should go is a runtime I/O failure
    let o = ctrlgraph(&["sweep", "--n", "3", "--trials", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_counts() {
    let o = ctrlgraph(&["enumerate", "--n", "4"]);
    assert_eq!(stdout(&o), "n,graphs,controllable\n4,64,0\n");
    let o = ctrlgraph(&["enumerate", "--n", "1"]);
    assert_eq!(stdout(&o), "n,graphs,controllable\n1,1,1\n");
}
