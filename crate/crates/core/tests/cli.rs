use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn li2poly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_li2poly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn divisibility_violation_is_an_input_error() {
    let o = li2poly(&["construct", "pstar", "--n", "10", "--d", "6"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("is a divisor of n"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(li2poly(&["construct", "pstar", "--n", "12"]).status.code(), Some(2));
    assert_eq!(li2poly(&["construct", "cube", "--n", "12"]).status.code(), Some(2));
    assert_eq!(li2poly(&["verify", "prism3", "--n", "8", "--d", "4"]).status.code(), Some(2));
    assert_eq!(li2poly(&[]).status.code(), Some(2));
    assert_eq!(li2poly(&["--help"]).status.code(), Some(0));
}

#[test]
fn construct_then_count_faces_both_ways() {
    let o = li2poly(&["construct", "dualcyclic", "--n", "8", "--d", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# family: dualcyclic n=8 d=4\n8 4\n"));
    let file = scratch("c8_4.hrep", &stdout(&o));
    let file = file.to_str().unwrap();

    let mut fs = Vec::new();
    for method in ["enumerate", "formula"] {
        let o = li2poly(&["fvector", "--in", file, "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["schema_version"], 1);
        fs.push(v["f"].clone());
    }
    assert_eq!(fs[0], fs[1]);
    assert_eq!(fs[0], serde_json::json!([20, 40, 28, 8, 1]));
}

#[test]
fn construct_writes_to_file() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("prism.hrep");
    let o = li2poly(&["construct", "prism3", "--n", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# family: prism3 n=6"));
}

#[test]
fn formula_method_needs_family_tag() {
    let file = scratch("untagged.hrep", "4 2\n1 0 1\n-1 0 0\n0 1 1\n0 -1 0\n");
    let o = li2poly(&["fvector", "--in", file.to_str().unwrap(), "--method", "formula"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("# family:"));
}

#[test]
fn parse_errors_name_the_line() {
    let file = scratch("broken.hrep", "# header\n2 2\n1 0 1\n1 x 1\n");
    let o = li2poly(&["fvector", "--in", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn verify_json_is_reproducible() {
    let args = ["verify", "pstar", "--n", "8", "--d", "4", "--json", "--no-timing"];
    let a = li2poly(&args);
    let b = li2poly(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["f_enumerated"], serde_json::json!([16, 32, 24, 8, 1]));
    assert_eq!(v["pass"], true);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn verify_reports_timing_unless_disabled() {
    let o = li2poly(&["verify", "dualcyclic", "--n", "6", "--d", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["timing_ms"].is_u64());
    assert_eq!(v["checks"]["ubt"], true);
}

#[test]
fn verify_cap_exceeded_is_an_input_error() {
    let o = li2poly(&["verify", "pstar", "--n", "8", "--d", "4", "--max-subsets", "5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn hvector_over_several_seeds() {
    let o = li2poly(&["construct", "pstar", "--n", "10", "--d", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let file = scratch("p10_4.hrep", &stdout(&o));
    let o = li2poly(&["hvector", "--in", file.to_str().unwrap(), "--seed", "3", "--repeat", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["runs"].as_array().unwrap().len(), 3);
    assert_eq!(v["runs"][0]["h"], serde_json::json!([1, 6, 11, 6, 1]));
    assert_eq!(v["ubt"]["holds"], true);
}

#[test]
fn hvector_rejects_redundant_rows() {
    let file = scratch("dup.hrep", "5 2\n1 0 1\n-1 0 0\n0 1 1\n0 -1 0\n1 0 1\n");
    let o = li2poly(&["hvector", "--in", file.to_str().unwrap(), "--seed", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("redundant"));
}

#[test]
fn profile_warns_on_redundancy() {
    let file = scratch("dup2.hrep", "5 2\n1 0 1\n-1 0 0\n0 1 1\n0 -1 0\n1 0 1\n");
    let o = li2poly(&["profile", "--in", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["redundant"], serde_json::json!([4]));
    assert_eq!(v["li2"], true);
    assert_eq!(v["n_prime"], 0);
    assert_eq!(v["bounded"], true);
}

#[test]
fn profile_of_pstar() {
    let o = li2poly(&["construct", "pstar", "--n", "12", "--d", "6"]);
    let file = scratch("p12_6.hrep", &stdout(&o));
    let o = li2poly(&["profile", "--in", file.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n_prime"], 12);
    assert_eq!(v["pair_counts"].as_array().unwrap().len(), 3);
    assert_eq!(v["redundant"], serde_json::json!([]));
    assert!(o.stderr.is_empty());
}

#[test]
fn ratio_csv_has_exact_column() {
    let o = li2poly(&[
        "report",
        "ratio",
        "--d",
        "4",
        "--k",
        "0",
        "--n-start",
        "8",
        "--n-end",
        "16",
        "--step",
        "4",
        "--csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("n,fk_dual_cyclic,fk_pstar,ratio,"));
    assert!(lines[1].starts_with("8,20,16,5/4,"));
    assert!(lines[2].starts_with("12,54,36,3/2,"));
    assert!(lines[3].starts_with("16,104,64,13/8,"));
}

#[test]
fn ratio_decimal_column_and_unit_slack() {
    let o = li2poly(&[
        "report",
        "ratio",
        "--d",
        "4",
        "--k",
        "0",
        "--n-start",
        "8",
        "--n-end",
        "8",
        "--csv",
        "--decimal",
        "2",
    ]);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",1.25"));
    // With slack 1 the envelope itself is the limit, which these rows respect.
    let o = li2poly(&[
        "report",
        "ratio",
        "--d",
        "4",
        "--k",
        "0",
        "--n-start",
        "8",
        "--n-end",
        "40",
        "--step",
        "4",
        "--slack",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn bounds_report_both_readings() {
    let o = li2poly(&["report", "bounds", "--n", "12", "--n-prime", "12", "--d", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["adjacency_bound"], "368/5");
    let ks = v["face_bounds"].as_array().unwrap();
    assert_eq!(ks.len(), 5);
    assert_eq!(ks[4]["bound"], "368/5");
    assert_eq!(ks[4]["literal_bound"], "248/5");
    assert_eq!(li2poly(&["report", "bounds", "--n", "12", "--n-prime", "12", "--d", "3"]).status.code(), Some(3));
}
