//! End-to-end checks of the binary: exit codes, round trips, cover
//! emission and the documented subcommand surface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn arbor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arbor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("arbor-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn gen_round_trips_through_stats() {
    let wheel = tmp("wheel7.el");
    let out = arbor(&["gen", "wheel", "7", "--out", wheel.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&wheel).unwrap();
    assert!(text.starts_with("8 14\n"));

    // Re-parse: stats must succeed and report the known profile.
    let out = arbor(&["stats", wheel.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["treewidth"], 3);
    assert_eq!(v["edge_arboricity"], 2);
    assert_eq!(v["k_valid_counts"][3], 7);
    std::fs::remove_file(&wheel).ok();
}

#[test]
fn gen_writes_identical_graphs_on_reparse() {
    // The emitted edge list re-parses to a graph with the same canonical
    // hash as the in-process generator output.
    let expected = [
        ("saw", vec!["3"], arbor::families::saw_graph(3).unwrap()),
        (
            "biclique-sub",
            vec!["2"],
            arbor::families::subdivided_biclique(2).unwrap().0,
        ),
        (
            "clique-tail",
            vec!["3", "2"],
            arbor::families::clique_plus_tail(3, 2).unwrap(),
        ),
        (
            "triangle-pendants",
            vec![],
            arbor::families::triangle_with_pendants(),
        ),
    ];
    for (family, params, reference) in expected {
        let mut args = vec!["gen", family];
        args.extend(params.iter().copied());
        let out = arbor(&args);
        assert!(out.status.success(), "{family} failed");
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed = arbor::io::parse_edge_list(&text).unwrap();
        assert_eq!(parsed.hash(), reference.hash(), "{family} round trip");
        // And writing it again is byte-identical.
        assert_eq!(arbor::io::write_edge_list(&parsed), text);
    }
    let out = arbor(&["gen", "saw", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("11 "), "4k-1 vertices for saw(3)");
}

#[test]
fn fk_reports_exact_values_and_covers() {
    let wheel = tmp("wheel-fk.el");
    arbor(&["gen", "wheel", "7", "--out", wheel.to_str().unwrap()]);
    let out = arbor(&["fk", wheel.to_str().unwrap(), "-k", "4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], 2);
    assert_eq!(v["cover"]["k"], 4);
    assert_eq!(v["cover"]["forests"].as_array().unwrap().len(), 2);
    std::fs::remove_file(&wheel).ok();
}

#[test]
fn fk_on_k3_is_zero_with_empty_cover() {
    let path = tmp("k3.el");
    std::fs::write(&path, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let out = arbor(&["fk", path.to_str().unwrap(), "-k", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], 0);
    assert_eq!(v["cover"]["forests"].as_array().unwrap().len(), 0);
    std::fs::remove_file(&path).ok();
}

#[test]
fn cover_methods_and_precondition_exit_code() {
    let saw = tmp("saw2.el");
    arbor(&["gen", "saw", "2", "--out", saw.to_str().unwrap()]);
    let out = arbor(&["cover", saw.to_str().unwrap(), "-k", "2", "--method", "tw2", "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["size"].as_u64().unwrap() <= 3);
    assert_eq!(v["verified"], true);
    std::fs::remove_file(&saw).ok();

    // Star at k = 3 through the tree-depth method: one forest.
    let star = tmp("star5.el");
    std::fs::write(&star, "6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n").unwrap();
    let out = arbor(&["cover", star.to_str().unwrap(), "-k", "3", "--method", "td", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["size"], 1);
    std::fs::remove_file(&star).ok();

    // K4 under the tw2 method: precondition failure, exit code 3.
    let k4 = tmp("k4.el");
    std::fs::write(&k4, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = arbor(&["cover", k4.to_str().unwrap(), "-k", "2", "--method", "tw2"]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(&k4).ok();
}

#[test]
fn parse_errors_exit_with_two() {
    let bad = tmp("bad.el");
    std::fs::write(&bad, "3 2\n0 1\nnope 2\n").unwrap();
    let out = arbor(&["stats", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");
    std::fs::remove_file(&bad).ok();

    let out = arbor(&["gen", "no-such-family", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_with_four() {
    let wheel = tmp("wheel-budget.el");
    arbor(&["gen", "wheel", "7", "--out", wheel.to_str().unwrap()]);
    let out = arbor(&["fk", wheel.to_str().unwrap(), "-k", "2", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(4));
    std::fs::remove_file(&wheel).ok();
}

#[test]
fn dot_output_is_written() {
    let c4 = tmp("c4.el");
    let dot = tmp("c4.dot");
    std::fs::write(&c4, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = arbor(&[
        "fk",
        c4.to_str().unwrap(),
        "-k",
        "2",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph {"));
    assert!(text.contains("--"));
    std::fs::remove_file(&c4).ok();
    std::fs::remove_file(&dot).ok();
}

#[test]
fn stdin_input_works() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_arbor"))
        .args(["fk", "-", "-k", "2", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"4 4\n0 1\n1 2\n2 3\n3 0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], 2);
}
