use std::path::Path;
use std::process::{Command, Output};

fn ca184(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ca184"))
        .args(args)
        .env_remove("CA184_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exact_suite_exits_zero() {
    let o = ca184(&["verify", "--suite", "exact"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out = stdout(&o);
    assert!(out.starts_with("name,passed,detail\n"));
    assert!(!out.contains(",false,"));
    // Timings only go to stderr so the data file is reproducible.
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}

#[test]
fn suite_listing() {
    let o = ca184(&["verify", "--suite", "all", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rule-184-table"));
    assert!(out.contains("decay-rate"));
    assert_eq!(ca184(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        ca184(&["transform", "--config", "xx", "--to", "ba"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ca184(&["evolve", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        ca184(&["stats", "--kind", "survival", "--init", "ca:1.5"])
            .status
            .code(),
        Some(2)
    );
    let o = ca184(&[
        "phase-sep",
        "--mode",
        "trace",
        "--config",
        "ba:OPEN:0..3:-0+",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_manifest_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"seed\": 1, \"unexpected\": true}").unwrap();
    assert_eq!(
        ca184(&["run", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(
        ca184(&["run", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn failed_tolerance_exits_three() {
    let o = ca184(&[
        "hydro",
        "--experiment",
        "decay",
        "--n-list",
        "8,32,128",
        "--ring",
        "16384",
        "--replicas",
        "3",
        "--tolerance",
        "0.0000001",
    ]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("slope,"));
}

#[test]
fn exact_values_in_both_formats() {
    let csv = stdout(&ca184(&["stats", "--kind", "u2n", "--n", "1,2"]));
    assert_eq!(
        csv,
        "statistic,n,estimate,stderr,count,reference,exact\n\
         u2n(n=1),1,0.5,0,0,0.5,1/2\n\
         u2n(n=2),2,0.375,0,0,0.375,3/8\n"
    );
    let jl = stdout(&ca184(&[
        "stats", "--kind", "u2n", "--n", "2", "--format", "jsonl",
    ]));
    let v: serde_json::Value = serde_json::from_str(jl.trim()).unwrap();
    assert_eq!(v["exact"], "3/8");
    assert_eq!(v["estimate"], 0.375);
}

#[test]
fn transform_and_partners() {
    let o = ca184(&[
        "transform",
        "--config",
        "ca184:RING:8:10110010",
        "--to",
        "ba",
    ]);
    assert_eq!(
        stdout(&o),
        "input,output\nca184:RING:8:10110010,ba:RING:8:00-0+000\n"
    );
    let o = ca184(&["partners", "--config", "ba:OPEN:0..5:+0-0+"]);
    assert_eq!(stdout(&o), "pos_plus,pos_minus,time2\n0,2,2\n");
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn manifest_replay_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    let o = ca184(&[
        "--seed",
        "11",
        "--out",
        first.to_str().unwrap(),
        "--format",
        "jsonl",
        "stats",
        "--kind",
        "survival",
        "--n",
        "4,8",
        "--samples",
        "3000",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(o.stdout.is_empty());
    assert_eq!(files(&first), ["stats.jsonl", "stats.manifest.json"]);
    let manifest = first.join("stats.manifest.json");
    let o = ca184(&[
        "run",
        manifest.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(
        std::fs::read(first.join("stats.jsonl")).unwrap(),
        std::fs::read(second.join("stats.jsonl")).unwrap()
    );
    let m: serde_json::Value = serde_json::from_slice(&std::fs::read(&manifest).unwrap()).unwrap();
    assert_eq!(m["seed"], 11);
    assert_eq!(m["command"]["stats"]["samples"], 3000);
}

#[test]
fn seeds_change_samples() {
    let run = |seed: &str| {
        stdout(&ca184(&[
            "--seed",
            seed,
            "stats",
            "--kind",
            "survival",
            "--n",
            "4",
            "--samples",
            "2000",
        ]))
    };
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn phase_trace_round_trip() {
    let o = ca184(&[
        "phase-sep",
        "--mode",
        "trace",
        "--config",
        "ba:OPEN:0..6:++0--0",
        "--horizon",
        "8",
    ]);
    let out = stdout(&o);
    let path = out
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .to_string();
    let o = ca184(&["phase-sep", "--mode", "validate", "--path", &path]);
    assert_eq!(stdout(&o), "valid,i,j,reason\ntrue,,,\n");
    let o = ca184(&[
        "phase-sep",
        "--mode",
        "reconstruct",
        "--path",
        &path,
        "--horizon",
        "8",
    ]);
    assert!(stdout(&o).contains("ba:OPEN:0..8:++0--0"));
}
