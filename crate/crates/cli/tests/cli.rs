use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn revsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revsynth"))
        .args(args)
        .env_remove("REVSYNTH_JOBS")
        .output()
        .expect("run revsynth")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

/// Applies gate names to every 3-bit input, wire 1 being the most
/// significant bit, and returns the 0-based image list.
fn evaluate(gates: &[Value]) -> Vec<u64> {
    (0u64..8)
        .map(|mut x| {
            for g in gates {
                let name = g.as_str().unwrap();
                let wires: Vec<u32> = name[1..].chars().map(|c| c.to_digit(10).unwrap()).collect();
                let bit = |w: u32| 1u64 << (3 - w);
                let (target, controls) = wires.split_last().unwrap();
                if controls.iter().all(|&c| x & bit(c) != 0) {
                    x ^= bit(*target);
                }
            }
            x
        })
        .collect()
}

fn spec_images(v: &Value) -> Vec<u64> {
    let s = v["spec"].as_str().unwrap();
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect()
}

#[test]
fn version_names_schema_and_cache_versions() {
    let out = revsynth(&["--version"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("version.txt"));
}

#[test]
fn synth_image_list_matches_golden() {
    let out = revsynth(&["synth", "--spec", "(2,6,5,4,7,1,0,3)", "--library", "NFT", "--objective", "length"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout.clone()).unwrap(), golden("synth_images_length.json"));
    let v = stdout_json(&out);
    assert!(v["value"].as_u64().unwrap() <= 6);
    assert_eq!(evaluate(v["witness"].as_array().unwrap()), vec![2, 6, 5, 4, 7, 1, 0, 3]);
}

#[test]
fn synth_cycle_notation_by_cost() {
    let out = revsynth(&["synth", "--spec", "((1,7)(2,5)(3,6,8,4))", "--library", "NFT", "--objective", "cost"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout.clone()).unwrap(), golden("synth_cycles_cost.json"));
    let v = stdout_json(&out);
    assert!(v["value"].as_u64().unwrap() <= 17);
    assert_eq!(v["cycles"], "(1,7)(2,5)(3,6,8,4)");
    assert_eq!(evaluate(v["witness"].as_array().unwrap()), spec_images(&v));
}

#[test]
fn synth_identity_is_the_empty_circuit() {
    let out = revsynth(&["synth", "--spec", "(0,1,2,3,4,5,6,7)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], 0);
    assert_eq!(v["witness"], Value::Array(vec![]));
}

#[test]
fn spec_format_override() {
    // as an image list this is the identity; as a cycle it swaps 1 and 2
    let images = stdout_json(&revsynth(&["synth", "--spec", "(0,1)", "--wires", "1"]));
    assert_eq!(images["value"], 0);
    let explicit = stdout_json(&revsynth(&["synth", "--spec", "(0,1)", "--wires", "1", "--spec-format", "images"]));
    assert_eq!(explicit["value"], 0);
    let swap = stdout_json(&revsynth(&["synth", "--spec", "(1,2)", "--wires", "1", "--spec-format", "cycles"]));
    assert_eq!(swap["value"], 1);
    assert_eq!(swap["witness"][0], "N1");
}

#[test]
fn schreier_sims_pathway_is_valid_but_not_optimal() {
    let spec = "(2,6,5,4,7,1,0,3)";
    let ss = revsynth(&["synth", "--spec", spec, "--method", "schreier-sims"]);
    assert_eq!(ss.status.code(), Some(0));
    let ss = stdout_json(&ss);
    assert_eq!(ss["optimal"], false);
    assert_eq!(evaluate(ss["witness"].as_array().unwrap()), vec![2, 6, 5, 4, 7, 1, 0, 3]);
    let bfs = stdout_json(&revsynth(&["synth", "--spec", spec]));
    assert!(bfs["value"].as_u64() <= ss["value"].as_u64());
}

#[test]
fn non_member_exits_with_two() {
    let out = revsynth(&["synth", "--spec", "((1,2))", "--gates", "N1,N2,N3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["member"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not generated"));
}

#[test]
fn parse_failures_exit_with_one_and_name_the_token() {
    let out = revsynth(&["synth", "--spec", "(1,2,x)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("'x'"));

    let out = revsynth(&["library", "--gates", "N1,Q7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Q7"));

    let out = revsynth(&["synth", "--spec", "(1,2)", "--method", "bfs", "--objective", "cost"]);
    assert_eq!(out.status.code(), Some(1));

    let out = revsynth(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(revsynth(&[]).status.code(), Some(1));
}

#[test]
fn library_reports_match_golden_and_examples() {
    let out = revsynth(&["library", "--gates", "N1,N2,N3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout.clone()).unwrap(), golden("library_nots.json"));
    let v = stdout_json(&out);
    assert_eq!((v["order"].as_u64(), v["universal"].as_bool()), (Some(8), Some(false)));

    let all = stdout_json(&revsynth(&["library", "--gates", "ALL"]));
    assert_eq!(all["order"], 40320);
    assert_eq!(all["universal"], true);
    assert_eq!(all["max_len"]["value"], 8);
    assert_eq!(all["max_len"]["companion"], 20);

    let worst = stdout_json(&revsynth(&["library", "--gates", "N3,F32,F31,T123", "--chain"]));
    assert_eq!(worst["universal"], true);
    assert_eq!(worst["max_len"]["value"], 18);
    let example = &worst["max_len"]["example"];
    assert_eq!(example["circuit"]["length"], 18);
    assert_eq!(
        evaluate(example["circuit"]["gates"].as_array().unwrap()),
        spec_images(example)
    );
    assert_eq!(worst["chain"]["order"], "40320");
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn census_output_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let masks = "1,2,7,30,3f,80,107,1c0,384,462,a5a,e00,fff";
    let mut runs = Vec::new();
    for jobs in ["1", "8"] {
        let out_dir = dir.path().join(format!("jobs{jobs}"));
        let out = revsynth(&[
            "census",
            "--masks",
            masks,
            "--jobs",
            jobs,
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let summary = stdout_json(&out);
        assert_eq!(summary["library_count"], 13);
        assert_eq!(summary["schema_version"], 1);
        runs.push((out.stdout, read_dir_sorted(&out_dir)));
    }
    assert_eq!(runs[0], runs[1]);
    let names: Vec<&str> = runs[0].1.iter().map(|(n, _)| n.as_str()).collect();
    assert!(names.contains(&"summary.json"));
    assert!(names.contains(&"min_len_hist.csv"));
    assert!(names.contains(&"library_records.jsonl"));
}

#[test]
fn census_jobs_default_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_revsynth"))
        .args(["census", "--scope", "groups", "--out"])
        .arg(dir.path())
        .env("REVSYNTH_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout_json(&out);
    assert_eq!(summary["universal_count"], 1960);
    let bad = Command::new(env!("CARGO_BIN_EXE_revsynth"))
        .args(["census", "--scope", "groups", "--out"])
        .arg(dir.path())
        .env("REVSYNTH_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn census_cache_resumes_and_strict_mode_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("libs.jsonl");
    let out_dir = dir.path().join("report");
    let run = |masks: &str, strict: bool| {
        let mut args = vec![
            "census",
            "--scope",
            "libraries",
            "--masks",
            masks,
            "--cache",
            cache.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ];
        if strict {
            args.push("--strict");
        }
        revsynth(&args)
    };
    assert_eq!(run("1,2,3", false).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 4);
    assert_eq!(run("1,2,3,4", false).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 5);

    // a run killed mid-write leaves a truncated last line
    let mut text = std::fs::read_to_string(&cache).unwrap();
    text.push_str("{\"version\":1,\"mask\":5,\"ord");
    std::fs::write(&cache, &text).unwrap();
    let out = run("1,2,3,4,5", true);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cache line 6"));

    let out = run("1,2,3,4,5", false);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped cache line 6"));
    let summary = stdout_json(&out);
    assert_eq!(summary["library_count"], 5);
    assert_eq!(run("1,2,3,4,5", true).status.code(), Some(0));
}
