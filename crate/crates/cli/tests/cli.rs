use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_induced-decomp");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("INDUCED_DECOMP_BUDGET_NODES")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn mols_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["mols", "--order", "5", "--count", "4"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 5);
    assert_eq!(v["squares"].as_array().unwrap().len(), 4);

    let out = run_in(dir.path(), &["mols", "--order", "6", "--count", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bound for this order is 1"), "{}", stderr(&out));

    assert_eq!(code(&run_in(dir.path(), &["mols", "--order", "0", "--count", "1"])), 1);
    assert_eq!(code(&run_in(dir.path(), &["mols", "--count", "1"])), 1);
    assert_eq!(code(&run_in(dir.path(), &["--help"])), 0);
    assert_eq!(code(&run_in(dir.path(), &["--version"])), 0);
}

#[test]
fn td_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["td", "--k", "3", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 9);

    assert_eq!(code(&run_in(dir.path(), &["td", "--k", "4", "--n", "6"])), 2);

    let out = run_in(dir.path(), &["td", "--k", "2", "--n", "1"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["blocks"], serde_json::json!([["g1:1", "g2:1"]]));
}

#[test]
fn blowup_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for pattern in ["1,2", "1,1", "2,2", "1,2,3"] {
        let out = run_in(d, &["blowup", "--pattern", pattern, "--out", "d.json"]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert!(stdout(&out).contains("verified"));
        let out = run_in(d, &["blowup", "--pattern", pattern, "--format", "edgelist", "--out", "g.txt"]);
        assert_eq!(code(&out), 0);
        let out = run_in(d, &["verify", "--graph", "g.txt", "--decomposition", "d.json"]);
        assert_eq!(code(&out), 0, "{pattern}: {}", stderr(&out));
        assert!(stdout(&out).contains("induced"));
    }
    let out = run_in(d, &["blowup", "--pattern", "1,1"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["copies"].as_array().unwrap().len(), 1);

    let out = run_in(d, &["blowup", "--pattern", "2,6,3,6"]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&run_in(d, &["blowup", "--pattern", "1,0"])), 1);
    assert_eq!(code(&run_in(d, &["blowup", "--pattern", "3"])), 1);
}

#[test]
fn verify_reports_tampering_and_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run_in(d, &["blowup", "--pattern", "1,2", "--out", "d.json"]);
    run_in(d, &["blowup", "--pattern", "1,2", "--format", "edgelist", "--out", "g.txt"]);

    // move the centre of the first copy into the other part
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(d.join("d.json")).unwrap()).unwrap();
    v["copies"][0]["classes"][0] = serde_json::json!([3]);
    std::fs::write(d.join("t.json"), v.to_string()).unwrap();
    let out = run_in(d, &["verify", "--graph", "g.txt", "--decomposition", "t.json"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("copy 1"), "{}", stderr(&out));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(d.join("d.json")).unwrap()).unwrap();
    v["copies"].as_array_mut().unwrap().pop();
    std::fs::write(d.join("short.json"), v.to_string()).unwrap();
    let out = run_in(d, &["verify", "--graph", "g.txt", "--decomposition", "short.json"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("covered by no copy"), "{}", stderr(&out));

    std::fs::write(d.join("bad.json"), "{\"pattern\": [1,").unwrap();
    assert_eq!(code(&run_in(d, &["verify", "--graph", "g.txt", "--decomposition", "bad.json"])), 1);
    std::fs::write(d.join("bad.txt"), "1 x\n").unwrap();
    assert_eq!(code(&run_in(d, &["verify", "--graph", "bad.txt", "--decomposition", "d.json"])), 1);
    assert_eq!(code(&run_in(d, &["verify", "--graph", "missing.txt", "--decomposition", "d.json"])), 1);
}

#[test]
fn non_induced_claims_can_be_forced() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // three paths cover K_4, but every path sits on a triangle
    std::fs::write(d.join("k4.txt"), "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    let cover = serde_json::json!({
        "pattern": [1, 2],
        "copies": [
            {"classes": [[1], [2, 3]]},
            {"classes": [[2], [3, 4]]},
            {"classes": [[4], [1, 3]]}
        ],
        "induced": false
    });
    std::fs::write(d.join("c.json"), cover.to_string()).unwrap();
    let out = run_in(d, &["verify", "--graph", "k4.txt", "--decomposition", "c.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run_in(d, &["verify", "--graph", "k4.txt", "--decomposition", "c.json", "--induced"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("not induced"), "{}", stderr(&out));
}

#[test]
fn dense_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run_in(d, &["dense", "--pattern", "1,2", "--n", "9", "--out", "c.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let summary = stdout(&out);
    assert!(summary.contains("lhs = 12") && summary.contains("rhs = (pq + p/2) n = 81"), "{summary}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(d.join("c.json")).unwrap()).unwrap();
    assert_eq!(v["bound"]["lhs"], 12);
    assert_eq!(v["params"]["p"], 2);
    assert_eq!(v["params"]["n_prime"], 4);

    run_in(d, &["dense", "--pattern", "1,2", "--n", "9", "--format", "edgelist", "--out", "g.txt"]);
    assert_eq!(code(&run_in(d, &["verify", "--graph", "g.txt", "--decomposition", "c.json", "--induced"])), 0);

    let out = run_in(d, &["dense", "--pattern", "1,2", "--n", "5"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("too small"));
}

#[test]
fn cex_values_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run_in(d, &["cex", "--pattern", "1,2", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("cex(4, K_{1,2}) = 2"));
    assert_eq!(lines.collect::<Vec<_>>(), vec!["1 2", "1 3", "2 4", "3 4"]);

    let out = run_in(d, &["cex", "--pattern", "1,1", "--n", "6"]);
    assert!(stdout(&out).starts_with("cex(6, K_{1,1}) = 0"));

    assert_eq!(code(&run_in(d, &["cex", "--pattern", "1,2", "--n", "9"])), 2);

    let out = Command::new(BIN)
        .args(["cex", "--pattern", "2,2", "--n", "7"])
        .env("INDUCED_DECOMP_BUDGET_NODES", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert_eq!(code(&run_in(d, &["cex", "--pattern", "2,2", "--n", "7", "--budget", "0"])), 2);

    let out = run_in(d, &["cex", "--pattern", "1,2", "--n", "4", "--out", "w.json"]);
    assert_eq!(code(&out), 0);
    std::fs::write(d.join("w.txt"), "1 2\n1 3\n2 4\n3 4\n").unwrap();
    assert_eq!(code(&run_in(d, &["verify", "--graph", "w.txt", "--decomposition", "w.json", "--induced"])), 0);
}
