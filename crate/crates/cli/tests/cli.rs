use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathlattice")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

const P2: &str = "+0 +4 +3";
const P3: &str = "+1 -4 +2";

#[test]
fn compare_incomparable_in_both_formats() {
    let g = fixture("fig1.graph");
    let out = run(&["compare", &g, P2, P3]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "incomparable");
    assert_eq!(json(&["compare", &g, P2, P3])["relation"], "incomparable");
    assert_eq!(stdout(&run(&["compare", &g, "+0 +2", "+1 +3"])).trim(), "left-of");
}

#[test]
fn meet_and_join_agree_across_methods() {
    let g = fixture("fig1.graph");
    for (verb, want) in [("meet", "+1 +3"), ("join", "+0 +2")] {
        let text = stdout(&run(&[verb, &g, P2, P3]));
        assert_eq!(text.lines().next(), Some(want));
        let st = json(&[verb, "--st-planar", &g, P2, P3]);
        assert_eq!(st["path"], want);
        assert_eq!(json(&[verb, &g, P2, P3])["path"], want);
    }
}

#[test]
fn st_planar_meet_refused_when_source_is_enclosed() {
    let g = fixture("fig2.graph");
    let v = json(&["meet", &g, "+0 +1 +2", "+3 +4 +5"]);
    assert_eq!(v["path"], "+3 +4 +2");
    let out = run(&["meet", "--st-planar", &g, "+0 +1 +2", "+3 +4 +5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&run(&["check-st-plane", &g])).trim(), "false");
}

#[test]
fn maxflow_algorithms_agree() {
    let g = fixture("fig1.graph");
    for algo in ["uppermost", "dual-sp", "generic"] {
        let v = json(&["maxflow", "--algo", algo, &g]);
        assert_eq!(v["value"], 2, "{algo}");
        assert_eq!(v["cut"]["capacity"], 2);
        assert_eq!(v["algorithm"], algo);
    }
    let text = stdout(&run(&["maxflow", &g]));
    assert!(text.starts_with("value 2\n"));
    assert!(text.contains("cut capacity 2"));
}

#[test]
fn order_exists_refutes_k33_family() {
    let out = run(&["order-exists", &fixture("k33st.graph"), "--paths", &fixture("fig3-family.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("refuted"));
    assert!(text.contains("incomparable"));
    let v = json(&["order-exists", &fixture("k33st.graph"), "--paths", &fixture("fig3-family.txt")]);
    assert_eq!(v["result"]["verdict"], "refuted");
}

#[test]
fn order_exists_accepts_fig1_family() {
    let out = run(&["order-exists", &fixture("fig1.graph"), "--paths", &fixture("fig1-paths.txt")]);
    assert_eq!(stdout(&out).lines().next(), Some("satisfiable"));
}

#[test]
fn order_exists_rejects_unforced_wlog() {
    let out = run(&["order-exists", &fixture("fig2.graph"), "--paths", &fixture("fig2-paths.txt"), "--wlog", "1", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_all_axioms() {
    let v = json(&["verify", "--lemmas", "--jobs", "2", &fixture("fig1.graph")]);
    assert_eq!(v["path_count"], 4);
    for key in ["partial_order", "lattice", "submodular", "consecutive"] {
        assert_eq!(v[key], true, "{key}");
    }
    assert_eq!(v["lemmas"]["cut_violations"], 0);
    let k33 = json(&["verify", &fixture("k33st.graph")]);
    assert_eq!(k33["consecutive"], false);
}

#[test]
fn paths_faces_dual_counts() {
    let g = fixture("fig1.graph");
    let v = json(&["paths", &g]);
    assert_eq!(v["count"], 4);
    assert_eq!(stdout(&run(&["paths", &g])).lines().next(), Some("count 4"));
    assert_eq!(json(&["faces", &g])["faces"].as_array().unwrap().len(), 3);
    assert_eq!(json(&["dual", &g])["edges"].as_array().unwrap().len(), 5);
    assert_eq!(json(&["uppermost", &g])["path"], "+0 +2");
    assert_eq!(json(&["lowermost", &g])["path"], "+1 +3");
}

#[test]
fn packing_with_weights_file() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    std::fs::write(&w, "# favour the top path\n3 +0 +2\n").unwrap();
    let g = fixture("fig1.graph");
    let v = json(&["packing", "--oracle", "--weights", w.to_str().unwrap(), &g]);
    assert_eq!(v["objective"], v["oracle"]);
    assert_eq!(v["objective"], 4);
    let plain = json(&["packing", "--oracle", &g]);
    assert_eq!(plain["objective"], 2);
    assert_eq!(plain["value"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "vertices 2\nedge 0 0 1\nbogus\n").unwrap();
    assert_eq!(run(&["faces", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["faces", "/nonexistent/x.graph"]).status.code(), Some(2));
    let g = fixture("fig1.graph");
    assert_eq!(run(&["compare", &g, "+0 x", "+1 +3"]).status.code(), Some(2));
    // well-formed darts that do not make a path
    assert_eq!(run(&["compare", &g, "+0 +3", "+1 +3"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));
    let weights = dir.path().join("w.txt");
    std::fs::write(&weights, "heavy +0 +2\n").unwrap();
    assert_eq!(run(&["packing", "--weights", weights.to_str().unwrap(), &g]).status.code(), Some(2));
}

#[test]
fn error_json_carries_status() {
    let out = run(&["--json", "compare", &fixture("fig1.graph"), "+0 +3", "+1 +3"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "verify", &fixture("k5st.graph")];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
}
