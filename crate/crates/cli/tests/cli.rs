use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

struct Workdir {
    dir: TempDir,
}

impl Workdir {
    fn new() -> Self {
        let w = Workdir { dir: tempfile::tempdir().expect("tempdir") };
        w.write(
            "x3.json",
            json!({
                "kind": "finite_discrete",
                "points": ["a", "b", "c"],
                "metric": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]],
            }),
        );
        w.write("interval10.json", json!({ "kind": "interval", "diameter": "10" }));
        w.write("tail.json", json!({ "kind": "tail_compactification" }));
        w.write("k1.json", elem(&[("0", "a", Some(0)), ("1", "b", None)]));
        w.write("k2.json", elem(&[("0", "a", Some(0)), ("1", "b", Some(0)), ("2", "c", None)]));
        w.write("k3.json", elem(&[("0", "a", Some(1)), ("1", "b", None)]));
        w.write("k5.json", elem(&[("0", "a", Some(0)), ("1", "b", Some(1)), ("2", "c", None)]));
        w
    }

    fn write(&self, name: &str, v: Value) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, v.to_string()).expect("write fixture");
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_rforest"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .expect("binary runs")
    }

    fn json(&self, args: &[&str]) -> (i32, Value) {
        let out = self.run(args);
        let code = out.status.code().expect("exit code");
        let text = String::from_utf8(out.stdout).expect("utf-8");
        let v = serde_json::from_str(text.trim()).unwrap_or(Value::Null);
        (code, v)
    }
}

fn elem(bps: &[(&str, &str, Option<u64>)]) -> Value {
    let bps: Vec<Value> = bps
        .iter()
        .map(|(r, x, l)| match l {
            Some(l) => json!({ "r": r, "x": x, "label": l }),
            None => json!({ "r": r, "x": x }),
        })
        .collect();
    json!({ "breakpoints": bps })
}

#[test]
fn space_check_reports_diameter() {
    let w = Workdir::new();
    assert_eq!(w.json(&["space", "check", "x3.json"]), (0, json!({ "valid": true, "diameter": "2" })));
    assert_eq!(w.json(&["space", "diameter", "interval10.json"]), (0, json!({ "diameter": "10" })));
}

#[test]
fn space_check_rejects_non_metric() {
    let w = Workdir::new();
    w.write(
        "bad.json",
        json!({
            "kind": "finite_discrete",
            "points": ["a", "b", "c"],
            "metric": [["0", "1", "3"], ["1", "0", "1"], ["3", "1", "0"]],
        }),
    );
    let (code, v) = w.json(&["space", "check", "bad.json"]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], json!(false));
    assert!(v["error"].is_string());
}

#[test]
fn elem_dist_omits_trunc_unless_asked() {
    let w = Workdir::new();
    let base = ["elem", "dist", "--space", "x3.json", "--a", "k1.json", "--b", "k3.json"];
    assert_eq!(w.json(&base), (0, json!({ "d": "2" })));
    let mut args = base.to_vec();
    args.extend(["--trunc", "1/2"]);
    assert_eq!(w.json(&args), (0, json!({ "d": "2", "d_trunc": "1/2" })));
}

#[test]
fn elem_meet_restrict_tp() {
    let w = Workdir::new();
    let (code, v) = w.json(&["elem", "meet", "--space", "x3.json", "--a", "k2.json", "--b", "k5.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["meet"], elem(&[("0", "a", Some(0)), ("1", "b", None)]));
    let (_, v) = w.json(&["elem", "restrict", "--space", "x3.json", "--a", "k2.json", "--r", "3/2"]);
    assert_eq!(v, elem(&[("0", "a", Some(0)), ("1", "b", None)]));
    let (_, v) = w.json(&["elem", "tp", "--space", "x3.json", "--a", "k2.json"]);
    assert_eq!(v, json!({ "tp": "c" }));
}

#[test]
fn interval_delta_is_twice_the_distance_off_the_interval() {
    let w = Workdir::new();
    let args =
        ["interval", "delta", "--space", "x3.json", "--a", "k3.json", "--b", "k2.json", "--r", "3", "--x", "k5.json"];
    assert_eq!(w.json(&args), (0, json!({ "delta": "2", "distance": "1", "on_interval": false })));
}

#[test]
fn interval_enum_lists_arc_order() {
    let w = Workdir::new();
    let (code, v) = w.json(&["interval", "enum", "--space", "x3.json", "--a", "k3.json", "--b", "k2.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["length"], json!("3"));
    let pos: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|e| e["pos"].as_str().unwrap()).collect();
    assert_eq!(pos, ["0", "1", "2", "3"]);
}

#[test]
fn tree_ccl_then_project() {
    let w = Workdir::new();
    let out =
        w.run(&["tree", "ccl", "--space", "x3.json", "--elem", "k1.json", "--elem", "k3.json", "--elem", "k5.json"]);
    assert!(out.status.success());
    fs::write(w.dir.path().join("tree.json"), &out.stdout).unwrap();
    let (code, v) = w.json(&["tree", "project", "--space", "x3.json", "--tree", "tree.json", "--x", "k2.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["distance"], json!("1"));
    assert_eq!(v["projection"], elem(&[("0", "a", Some(0)), ("1", "b", None)]));
}

#[test]
fn path_parallel_samples_pass_the_entourage_test() {
    let w = Workdir::new();
    w.write("f.json", json!({ "breakpoints": [{ "r": "0", "x": "3" }, { "r": "2", "x": "5" }] }));
    let args = [
        "path",
        "parallel",
        "--space",
        "interval10.json",
        "--f",
        "f.json",
        "--v",
        "1/2",
        "--e",
        "1",
        "--at",
        "601/200",
    ];
    let (code, v) = w.json(&args);
    assert_eq!(code, 0);
    assert_eq!(v["samples"][0]["entourage_test"], json!(true));
    assert!(v["region"]["spans"].is_array());

    let mut outside = args.to_vec();
    outside.extend(["--at", "13/4"]);
    let (code, v) = w.json(&outside);
    assert_eq!(code, 1);
    assert!(v["samples"][1]["error"].is_string());
}

#[test]
fn path_test_and_axioms() {
    let w = Workdir::new();
    w.write("f.json", json!({ "breakpoints": [{ "r": "0", "x": "3" }, { "r": "2", "x": "5" }] }));
    w.write("g.json", json!({ "breakpoints": [{ "r": "0", "x": "31/10" }, { "r": "2", "x": "5" }] }));
    let (code, v) = w.json(&[
        "path",
        "test",
        "--space",
        "interval10.json",
        "--f",
        "f.json",
        "--g",
        "g.json",
        "--v",
        "1/2",
        "--e",
        "1",
    ]);
    assert_eq!((code, v), (0, json!({ "close": true })));

    w.write(
        "tripod.json",
        json!({
            "points": ["a", "b", "c", "o"],
            "metric": [["0", "2", "2", "1"], ["2", "0", "2", "1"], ["2", "2", "0", "1"], ["1", "1", "1", "0"]],
            "basepoint": "a",
        }),
    );
    assert_eq!(w.json(&["path", "axioms", "--metric", "tripod.json", "--r", "5"]), (0, json!({ "accepts": false })));
}

#[test]
fn types_dist_matches_oracle() {
    let w = Workdir::new();
    let k3 = elem(&[("0", "a", Some(1)), ("1", "b", None)]);
    let k2 = elem(&[("0", "a", Some(0)), ("1", "b", Some(0)), ("2", "c", None)]);
    w.write("model.json", json!({ "trees": [{ "intervals": [[k3, k2]] }] }));
    w.write(
        "t1.json",
        json!({
            "kind": "path",
            "m": elem(&[("0", "a", Some(0)), ("1", "b", None)]),
            "f": { "breakpoints": [{ "r": "0", "x": "b" }, { "r": "1", "x": "c" }] },
        }),
    );
    w.write("t2.json", json!({ "kind": "realized", "m": k2 }));
    for verb in ["dist", "oracle"] {
        let args = ["types", verb, "--space", "x3.json", "--model", "model.json", "--t1", "t1.json", "--t2", "t2.json"];
        assert_eq!(w.json(&args), (0, json!({ "d": "2" })), "{verb}");
    }
}

#[test]
fn prop_run_parallel_paths_passes() {
    let w = Workdir::new();
    let (code, v) = w.json(&[
        "prop",
        "run",
        "--suite",
        "parallel-paths",
        "--seed",
        "7",
        "--cases",
        "200",
        "--space",
        "interval10.json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"], json!(200));
    assert_eq!(v["violations"], json!([]));
}

#[test]
fn prop_run_is_deterministic_across_schedules() {
    let w = Workdir::new();
    let args = ["prop", "run", "--suite", "metric-axioms", "--seed", "42", "--cases", "300", "--space", "tail.json"];
    let (_, mut a) = w.json(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let (_, mut b) = w.json(&seq);
    a.as_object_mut().unwrap().remove("wall_time_ms");
    b.as_object_mut().unwrap().remove("wall_time_ms");
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_two() {
    let w = Workdir::new();
    assert_eq!(w.run(&["bogus"]).status.code(), Some(2));
    assert_eq!(w.run(&["elem", "dist", "--space", "x3.json"]).status.code(), Some(2));
    assert_eq!(w.run(&["space", "check", "missing.json"]).status.code(), Some(2));
    let unknown = w.run(&["prop", "run", "--suite", "nope", "--seed", "1", "--space", "x3.json"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(!unknown.stderr.is_empty());
}

#[test]
fn invalid_elements_exit_one() {
    let w = Workdir::new();
    w.write("jump.json", elem(&[("0", "a", Some(0)), ("1", "c", None)]));
    let out = w.run(&["elem", "tp", "--space", "x3.json", "--a", "jump.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}
