use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hypertree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertree")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes() {
    assert_eq!(hypertree(&["--help"]).status.code(), Some(0));
    assert_eq!(hypertree(&["--version"]).status.code(), Some(0));
    assert_eq!(hypertree(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(hypertree(&["constants", "--d", "2", "--bogus"]).status.code(), Some(1));
    // seed is mandatory for stochastic subcommands
    assert_eq!(hypertree(&["grow", "--n", "6", "--d", "2"]).status.code(), Some(1));
    // out-of-range parameters
    assert_eq!(hypertree(&["constants", "--d", "1"]).status.code(), Some(1));
    assert_eq!(hypertree(&["population", "--d", "2", "--pool", "10", "--seed", "1"]).status.code(), Some(1));
    assert_eq!(hypertree(&["census", "--n", "20", "--d", "2", "--depth", "3", "--trials", "1", "--seed", "1"]).status.code(), Some(1));
    assert_eq!(hypertree(&["certify", "--in", "/nonexistent.cx"]).status.code(), Some(1));
}

#[test]
fn malformed_complex_reports_the_line() {
    let path = scratch("bad.cx");
    fs::write(&path, "dim=2 n=5\n0 1 2\n0 2 1\n").unwrap();
    let out = hypertree(&["certify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn documented_examples() {
    let v = json(&hypertree(&["kalai-sum", "--n", "5", "--d", "2"]));
    assert_eq!((v["kalai_sum"].as_str(), v["expected"].as_str(), v["match"].as_bool()), (Some("125"), Some("125"), Some(true)));
    let v = json(&hypertree(&["constants", "--d", "2"]));
    assert!((v["c_star"].as_f64().unwrap() - 2.754).abs() < 1e-3);
    let v = json(&hypertree(&["certify", "--in", &data("star_5_2.cx")]));
    assert_eq!(v["is_hypertree"], true);
}

#[test]
fn projective_plane() {
    let rp2 = data("rp2_6.cx");
    let v = json(&hypertree(&["snf", "--in", &rp2]));
    assert_eq!(v["torsion_order"], "2");
    assert_eq!(v["rank"], 10);
    let v = json(&hypertree(&["certify", "--in", &rp2]));
    assert_eq!(v["is_hypertree"], true);
    let v = json(&hypertree(&["rank", "--in", &rp2, "--p", "2"]));
    assert_eq!((v["rank"].as_u64(), v["rank_mod_p"].as_u64()), (Some(10), Some(9)));
    assert_eq!(hypertree(&["rank", "--in", &rp2, "--p", "4"]).status.code(), Some(1));
    let v = json(&hypertree(&["collapse", "--in", &rp2]));
    assert_eq!((v["collapsible"].as_bool(), v["removed"].as_u64()), (Some(false), Some(0)));
}

#[test]
fn cone_from_files_matches_the_builtin_construction() {
    let t = scratch("t.cx");
    let s = scratch("s.cx");
    fs::write(&t, hypertree(&["cone", "--n", "5", "--d", "2", "--format", "cx"]).stdout).unwrap();
    fs::write(&s, hypertree(&["cone", "--n", "5", "--d", "1", "--format", "cx"]).stdout).unwrap();
    let joined = hypertree(&["cone", "--in", t.to_str().unwrap(), "--in", s.to_str().unwrap(), "--format", "cx"]);
    assert_eq!(joined.status.code(), Some(0));
    let direct = hypertree(&["cone", "--n", "6", "--d", "2", "--format", "cx"]);
    assert_eq!(joined.stdout, direct.stdout);
    let v = json(&hypertree(&["cone", "--n", "6", "--d", "2"]));
    assert_eq!((v["is_hypertree"].as_bool(), v["collapsible"].as_bool()), (Some(true), Some(true)));
}

#[test]
fn csv_schemas() {
    let out = String::from_utf8(hypertree(&["curve", "--d", "2", "--c", "1,5", "--format", "csv"]).stdout).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "c,t_c,sbar,r");
    assert_eq!(lines[1], "1,,1,0.333333333333");
    assert!(lines[2].starts_with("5,0.00724212199961,0.0215694008429,0.993018853532"));

    let out = hypertree(&["census", "--n", "30", "--d", "2", "--trials", "2", "--seed", "1", "--format", "csv"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("type_code,empirical,limit,abs_diff\n"));

    let out = hypertree(&["hypertree-prob", "--n", "4", "--d", "1", "--trials", "100", "--seed", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("d,n,seed,trials,statistic,value,stderr\n"));
    assert!(text.contains("\n1,4,3,100,exact,0.8,\n"));
}

#[test]
fn stochastic_outputs_carry_seed_and_version() {
    let v = json(&hypertree(&["greedy-collapsible", "--n", "7", "--d", "2", "--seed", "5"]));
    assert_eq!(v["seed"], 5);
    assert!(v["version"].as_str().unwrap().starts_with('v'));
    assert_eq!(v["collapsible"], true);
    let v = json(&hypertree(&["sample-lm", "--n", "8", "--d", "2", "--m", "12", "--seed", "5"]));
    assert_eq!(v["face_count"], 12);
    let v = json(&hypertree(&["sample-1out", "--n", "10", "--d", "2", "--seed", "5"]));
    assert!(v["face_count"].as_u64().unwrap() <= 45);
    let v = json(&hypertree(&["grow", "--n", "7", "--d", "2", "--seed", "5"]));
    assert_eq!(v["is_hypertree"], true);
    assert_eq!(v["coshadow_sizes"].as_array().unwrap().len(), 16);
}

#[test]
fn manifest_replays_byte_for_byte() {
    let out = scratch("pop.json");
    let status = hypertree(&[
        "population", "--d", "2", "--pool", "10000", "--steps", "50", "--seed", "8", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let first = fs::read(&out).unwrap();
    let manifest: Value = serde_json::from_slice(&fs::read(scratch("pop.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "population");
    assert_eq!(manifest["seed"], 8);
    assert_eq!(manifest["params"]["pool"], 10000);
    let argv: Vec<String> = manifest["argv"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
    let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
    assert_eq!(hypertree(&argv).status.code(), Some(0));
    assert_eq!(fs::read(&out).unwrap(), first);
}

#[test]
fn manifest_goes_to_stderr_without_out() {
    let out = hypertree(&["enumerate", "--n", "4", "--d", "1"]);
    let manifest: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(manifest["subcommand"], "enumerate");
    assert!(manifest["duration_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["curve-experiment", "--n", "30", "--d", "2", "--c", "2,4", "--trials", "6", "--seed", "1"];
    let one = hypertree(&[&args[..], &["--jobs", "1"]].concat());
    let three = hypertree(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(hypertree(&[&args[..], &["--jobs", "0"]].concat()).status.code(), Some(1));
}

#[test]
fn complex_format_only_for_complexes() {
    assert_eq!(hypertree(&["constants", "--d", "2", "--format", "cx"]).status.code(), Some(1));
    let out = hypertree(&["coshadow", "--in", &data("star_5_2.cx"), "--format", "cx"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dim=2 n=5\n");
}
