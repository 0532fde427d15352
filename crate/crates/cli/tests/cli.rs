use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_markgame"));
    c.env_remove("MARKGAME_BUDGET");
    c
}

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut cmd = bin();
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(bytes) = stdin {
        pipe.write_all(bytes).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("markgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_tmp(name: &str, contents: &[u8]) -> String {
    let p = tmp(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

const K3: &str = r#"{"vertices":[{"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0},{"id":2,"x":0,"y":1}],
    "edges":[[0,1],[1,2],[0,2]],"faces":[]}"#;

#[test]
fn gen_pipes_into_verify() {
    let g = run(&["gen", "T", "--rows", "2", "--cols", "2"], None);
    assert!(g.status.success());
    let v = run(&["verify"], Some(&g.stdout));
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    let report = json(&v);
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["report"]["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_fails_without_scheme_and_derives_one() {
    let g = run(&["gen", "T", "--rows", "2", "--cols", "2"], None);
    let mut doc: Value = serde_json::from_slice(&g.stdout).unwrap();
    for face in doc["faces"].as_array_mut().unwrap() {
        face["color"] = Value::Null;
        face["marked_angle"] = Value::Null;
    }
    let bare = serde_json::to_vec(&doc).unwrap();
    assert_eq!(run(&["verify"], Some(&bare)).status.code(), Some(2));
    let derived = run(&["verify", "--derive"], Some(&bare));
    assert_eq!(derived.status.code(), Some(0));
    let out = json(&derived);
    assert_eq!(out["derived"], Value::Bool(true));
    // the derived graph document verifies on its own
    let again = run(&["verify"], Some(out["graph"].to_string().as_bytes()));
    assert_eq!(again.status.code(), Some(0));

    let apollonian = run(&["gen", "apollonian", "--insertions", "6", "--seed", "2"], None);
    assert_eq!(run(&["verify"], Some(&apollonian.stdout)).status.code(), Some(2));
}

#[test]
fn solve_triangle() {
    let path = write_tmp("k3.json", K3.as_bytes());
    let out = run(&["solve", "--graph", &path], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["value"], 3);
    assert_eq!(v["config"]["budget"], 200_000_000u64);
}

#[test]
fn budget_exhaustion_exits_3() {
    let g = run(&["gen", "T", "--rows", "3", "--cols", "3"], None);
    let out = run(&["solve", "--budget", "500"], Some(&g.stdout));
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["result"]["value"].is_null());

    let mut cmd = bin();
    let path = write_tmp("t33.json", &g.stdout);
    let out = cmd.args(["solve", "--graph", &path]).env("MARKGAME_BUDGET", "500").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["config"]["budget"], 500);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["gen", "Q", "--rows", "2", "--cols", "2"], None).status.code(), Some(1));
    assert_eq!(run(&["gen", "T"], None).status.code(), Some(1));
    let path = write_tmp("k3-usage.json", K3.as_bytes());
    assert_eq!(run(&["play", "-g", &path, "--alice", "alice:dance", "--bob", "bob:greedy"], None).status.code(), Some(1));
    assert_eq!(run(&["play", "-g", &path, "--alice", "bob:greedy", "--bob", "bob:greedy"], None).status.code(), Some(1));
    assert_eq!(run(&["solve"], Some(b"not json")).status.code(), Some(1));
    assert_eq!(run(&["export", "-g", &path, "--format", "svg"], None).status.code(), Some(1));
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
}

#[test]
fn angle_needs_a_scheme() {
    let path = write_tmp("k3-angle.json", K3.as_bytes());
    let out = run(&["play", "-g", &path, "--alice", "alice:angle", "--bob", "bob:greedy"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn play_is_reproducible() {
    let path = write_tmp("t22.json", &run(&["gen", "T", "--rows", "2", "--cols", "2"], None).stdout);
    let args = ["play", "-g", &path, "--alice", "alice:angle", "--bob", "bob:random", "--seed", "11"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["config"]["bob"], "bob:random:seed=11");
    assert!(v["final_score"].as_u64().unwrap() <= 3);
    assert_eq!(v["trace"].as_array().unwrap().len(), v["rounds"].as_u64().unwrap() as usize);
}

#[test]
fn tourney_angle_alice_never_exceeds_three() {
    let path = write_tmp("t22-tourney.json", &run(&["gen", "T", "--rows", "2", "--cols", "2"], None).stdout);
    let out = run(
        &["tourney", "-g", &path, "--alice", "alice:angle", "--bob", "bob:random", "--games", "1000", "--seed", "0"],
        None,
    );
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["max"], 3);
    let total: u64 = v["histogram"].as_object().unwrap().values().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total, 1000);
    let seeds: Vec<u64> = v["results"].as_array().unwrap().iter().map(|r| r["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, (0..1000).collect::<Vec<_>>());
}

#[test]
fn extension_runs_on_centred_lattice() {
    let g = run(&["gen", "T-prime", "--rows", "3", "--cols", "3"], None);
    assert!(g.status.success());
    let path = write_tmp("tprime.json", &g.stdout);
    let out = run(&["tourney", "-g", &path, "--alice", "alice:extension:n=4", "--bob", "bob:random", "--games", "50"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["max"].as_u64().unwrap() <= 3);
}

#[test]
fn bounds_with_subgraph() {
    let host = write_tmp(
        "paw.json",
        br#"{"vertices":[{"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0},{"id":2,"x":0,"y":1},{"id":3,"x":2,"y":2}],
            "edges":[[0,1],[1,2],[0,2],[2,3]],"faces":[]}"#,
    );
    let sub = write_tmp("k3-sub.json", K3.as_bytes());
    let out = run(&["bounds", "-g", &host, "--sub", &sub], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bracket"]["lo"], 3);
    assert_eq!(v["bracket"]["hi"], 3);
}

#[test]
fn export_and_out_file() {
    let g = run(&["gen", "R", "--rows", "1", "--cols", "1"], None);
    let target = tmp("r11.dot");
    let out = run(&["export", "--format", "dot", "--out", &target.to_string_lossy()], Some(&g.stdout));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(&target).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert!(dot.trim_end().ends_with('}'));
}
