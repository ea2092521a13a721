use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hdx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdx")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn propagate_reaches_full_coverage() {
    let out = hdx(&["propagate", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["fully_covered"], true);
    assert_eq!(v["result"]["stages"][2]["uncovered"], serde_json::json!([]));
    assert_eq!(v["tool"], "hdx");
    assert_eq!(v["params"]["n"], 3);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn relations_verify_exit_status() {
    let out = hdx(&["relations", "verify", "--preset", "sl", "--n", "3", "--p", "3", "--d", "1", "--target-s", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["violations"], 0);
    let emit = json_of(&hdx(&["relations", "emit", "--preset", "unip", "--n", "3", "--p", "2", "--d", "1"]));
    assert!(emit["result"]["relation_count"].as_u64().unwrap() > 0);
}

#[test]
fn exit_codes() {
    assert_eq!(hdx(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(hdx(&["propagate"]).status.code(), Some(2));
    // parameter error
    assert_eq!(hdx(&["propagate", "--n", "2"]).status.code(), Some(2));
    // cap exceeded
    assert_eq!(hdx(&["ring", "enum", "--p", "5", "--s", "3", "--d", "2", "--cap", "10"]).status.code(), Some(3));
    // kernel orders fail for p = 2, s_lo = 1, s_hi = 3
    let out = hdx(&["group", "kernel", "--n", "1", "--p", "2", "--s-hi", "3", "--s-lo", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["result"]["violations"].as_u64().unwrap() > 0);
}

#[test]
fn ring_operations() {
    let v = json_of(&hdx(&["ring", "op", "--p", "5", "--s", "3", "--op", "inv", "1+t"]));
    assert_eq!(v["result"]["value"]["text"], "1+4*t+t^2");
    let v = json_of(&hdx(&["ring", "op", "--p", "5", "--s", "3", "--op", "mul", "1+t", "[1,4,1]@5,3"]));
    assert_eq!(v["result"]["value"]["compact"], "[1,0,0]@5,3");
}

#[test]
fn complex_files_round_trip_through_commands() {
    let torus = tmp("torus.jsonl");
    let t = torus.to_str().unwrap();
    let build = hdx(&["complex", "build", "--preset", "torus", "--out", t]);
    assert_eq!(build.status.code(), Some(0), "{}", String::from_utf8_lossy(&build.stderr));
    assert_eq!(json_of(&build)["result"]["face_counts"], serde_json::json!([7, 21, 14]));

    let stats = json_of(&hdx(&["complex", "stats", t]));
    assert_eq!(stats["result"]["weights_normalized"], true);
    assert_eq!(stats["result"]["weight_sums"], serde_json::json!(["1", "1", "1"]));

    let h1 = json_of(&hdx(&["cohomology", "h1", "--complex", t, "--lambda", "zmod:2", "--mode", "brute"]));
    assert_eq!(h1["result"]["trivial"], false);
    assert_eq!(h1["result"]["classes"], 4);

    let e = json_of(&hdx(&["expansion", "h1", "--complex", t, "--lambda", "zmod:2"]));
    assert_eq!(e["result"]["cobound"], "0");

    let tri = tmp("triangle.jsonl");
    hdx(&["complex", "build", "--preset", "triangle", "--out", tri.to_str().unwrap()]);
    let h0 = |lam: &str| json_of(&hdx(&["expansion", "h0", "--complex", tri.to_str().unwrap(), "--lambda", lam]))["result"]["h0"].clone();
    assert_eq!(h0("zmod:2"), "2");
    // three distinct vertex values: every edge disagrees, two vertices must change
    assert_eq!(h0("sym:3"), "3/2");
}

#[test]
fn complex_to_stdout_is_json_lines() {
    let out = hdx(&["complex", "build", "--preset", "sphere"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    let header: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(header["vertex_count"], 4);
}

#[test]
fn spectral_links_of_small_ko() {
    let v = json_of(&hdx(&["spectral", "links", "--n", "2", "--p", "2", "--s", "3", "--d", "1"]));
    let links = v["result"]["links"].as_array().unwrap();
    assert_eq!(links.len(), 3);
    assert!(links.iter().all(|l| l["connected"] == true));
}

#[test]
fn seeded_output_is_reproducible() {
    let tri = tmp("torus-search.jsonl");
    hdx(&["complex", "build", "--preset", "torus", "--out", tri.to_str().unwrap()]);
    let args = ["expansion", "h1", "--complex", tri.to_str().unwrap(), "--lambda", "zmod:3", "--mode", "search", "--proposals", "200", "--seed", "9"];
    let a = hdx(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, hdx(&args).stdout);
    assert_eq!(json_of(&a)["seed"], 9);
}

#[test]
fn text_format_and_out_file() {
    let out = tmp("dd.txt");
    let o = hdx(&["expansion", "dd", "--local-lambda", "1/1000", "--beta", "1/2", "--format", "text", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("result.positive = true"), "{text}");
}
