use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path_of(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn synth_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.txt", "3\n1 2\n2 3\n1 3\n");
    let (a, b) = (path_of(&dir, "a.net"), path_of(&dir, "b.net"));
    let first = qcolor(&["synth", "--graph", &g, "--k", "3", "--d", "2", "--out", &a]);
    let second = qcolor(&["synth", "--graph", &g, "--k", "3", "--d", "2", "--out", &b]);
    assert!(first.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(first.stdout.len(), second.stdout.len());
    let out = stdout(&first);
    assert!(out.contains("6 data + 4 ancilla"), "{out}");
    assert!(out.contains("+ 1 output"));
    assert!(fs::read_to_string(&a).unwrap().starts_with("dims 2 2 2 2 2 2 2 2 2 2 2\nroles "));
}

#[test]
fn synth_ternary_path_and_five_colors() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "path.txt", "3\n1 2\n1 3\n");
    let out = path_of(&dir, "p.net");
    let o = qcolor(&["synth", "--graph", &path, "--k", "3", "--d", "3", "--out", &out]);
    assert!(stdout(&o).contains("3 data + 3 ancilla (3 comparator) + 1 output"), "{}", stdout(&o));
    assert!(stdout(&o).contains("invalid colors: none"));

    let pair = write(dir.path(), "pair.txt", "2\n1 2\n");
    let o = qcolor(&["synth", "--graph", &pair, "--k", "5", "--d", "2", "--out", &out]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("digits per vertex: 3"));
    assert!(stdout(&o).contains("invalid colors: 5 6 7"));
}

#[test]
fn simulate_writes_histograms() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.txt", "3\n1 2\n2 3\n1 3\n");
    let csv = path_of(&dir, "h.csv");
    let o = qcolor(&["simulate", "--graph", &g, "--k", "3", "--d", "2", "--iterations", "auto", "--histogram", &csv]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("iterations: 2"));
    assert!(out.contains("success probability: 0.9997") || out.contains("success probability: 0.9998"), "{out}");
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("basis_string,probability"));
    assert_eq!(text.lines().count(), 65);

    let json = path_of(&dir, "h.json");
    let o = qcolor(&["simulate", "--graph", &g, "--k", "3", "--d", "2", "--histogram", &json]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["solutions"], 6);
}

#[test]
fn simulate_without_solutions_warns() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.txt", "3\n1 2\n2 3\n1 3\n");
    let o = qcolor(&["simulate", "--graph", &g, "--k", "2", "--d", "2"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("0 solutions"));
    assert!(stdout(&o).contains("iterations: 0"));
}

#[test]
fn simulate_ternary_lists_marked_first() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "path.txt", "3\n1 2\n1 3\n");
    let o = qcolor(&["simulate", "--graph", &g, "--k", "3", "--d", "3"]);
    let out = stdout(&o);
    let listed: Vec<&str> = out.lines().filter(|l| l.starts_with("  ")).collect();
    assert_eq!(listed.len(), 12);
    assert!(listed.iter().all(|l| l.ends_with("marked")));
}

#[test]
fn decompose_and_verify() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.txt", "3\n1 2\n2 3\n1 3\n");
    let net = path_of(&dir, "k3.net");
    let low = path_of(&dir, "low.net");
    assert!(qcolor(&["synth", "--graph", &g, "--k", "3", "--d", "2", "--out", &net]).status.success());
    let o = qcolor(&["decompose", "--netlist", &net, "--level", "two-wire", "--out", &low, "--verify"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("< 1e-9"));
    let lowered = fs::read_to_string(&low).unwrap();
    assert!(lowered.lines().skip(2).all(|l| l.matches("ctrl").count() <= 1), "arity above 2");

    // nothing to lower: output equals input
    let small = write(dir.path(), "small.net", "dims 3 3\nmct ctrl 0:2 target 1\n");
    let o = qcolor(&["decompose", "--netlist", &small, "--level", "mct", "--out", &low]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&low).unwrap(), "dims 3 3\nmct ctrl 0:2 target 1\n");
}

#[test]
fn report_outputs() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "path.txt", "3\n1 2\n1 3\n");
    let o = qcolor(&["report", "--graph", &path, "--k", "3", "--d", "3", "--compare-baselines"]);
    assert!(stdout(&o).contains("106"));
    let k3 = write(dir.path(), "k3.json", r#"{"n":3,"adj":[[0,1,1],[1,0,1],[1,1,0]]}"#);
    let o = qcolor(&["report", "--graph", &k3, "--k", "3", "--d", "2", "--compare-baselines", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["data_qudits"], 6);
    let row = &doc["baseline_comparisons"][0];
    assert_eq!(row["baseline"], 9);
    assert_eq!(row["ours"], 6);
    for key in ["n", "k", "d", "ancilla_qudits", "gate_count_total", "gate_count_by_kind", "depth"] {
        assert!(doc.get(key).is_some(), "{key}");
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = path_of(&dir, "x.net");
    let bad = write(dir.path(), "loop.txt", "2\n1 1\n");
    let o = qcolor(&["synth", "--graph", &bad, "--k", "2", "--d", "2", "--out", &out]);
    assert_eq!(o.status.code(), Some(2));
    let missing = path_of(&dir, "missing.txt");
    assert_eq!(qcolor(&["synth", "--graph", &missing, "--k", "2", "--d", "2", "--out", &out]).status.code(), Some(2));
    let g = write(dir.path(), "k2.txt", "2\n1 2\n");
    assert_eq!(qcolor(&["synth", "--graph", &g, "--k", "1", "--d", "2", "--out", &out]).status.code(), Some(2));
    let badnet = write(dir.path(), "bad.net", "dims 2 2\nmct ctrl 0:5 target 1\n");
    let o = qcolor(&["decompose", "--netlist", &badnet, "--out", &out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    // 12 vertices at k = 3, d = 2 is far beyond the simulator limit
    let mut big = String::from("12\n");
    for i in 1..12 {
        big.push_str(&format!("{i} {}\n", i + 1));
    }
    let big = write(dir.path(), "big.txt", &big);
    let o = qcolor(&["simulate", "--graph", &big, "--k", "3", "--d", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}
