//! End-to-end checks of the command-line interface: exit codes, wire
//! formats, and byte-level determinism of seeded runs.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitcurves"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn dominates_answers_and_exits_zero() {
    let out = run(&["dominates", "--l", "1,4", "--m", "1,2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dominates"], serde_json::Value::Bool(false));

    let out = run(&["dominates", "--l", "1,2,4", "--m", "1,4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dominates"], serde_json::Value::Bool(true));
}

#[test]
fn exponents_of_the_complete_quadrilateral() {
    let dir = std::env::temp_dir().join("splitcurves-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.json");
    std::fs::write(
        &path,
        r#"{"genus_labels":[0,0,0,0],"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
    )
    .unwrap();
    let out = run(&["exponents", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["exponent_set"], serde_json::json!([2, 3]));
    assert_eq!(v["classification"], "PolygonalGenus3");
    assert_eq!(v["admissible_sets"], 8);

    // malformed graph: input error
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"genus_labels":[0],"edges":[[0,5]]}"#).unwrap();
    let out = run(&["exponents", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    // genus 3: the classification predicate is exact
    let out = run(&["verify", "--theorem", "3.4.1", "--g", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert_eq!(v["survivors"], serde_json::json!(["PolygonalGenus3", "Split"]));

    // genus 4: the predicate admits the bipartite exception; failure records
    // carry the statement id and the counterexample graph
    let out = run(&["verify", "--theorem", "3.4.1", "--g", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(false));
    let rec = &v["failures"][0];
    assert_eq!(rec["statement"], "3.4.1");
    assert!(rec["graph"]["edges"].is_array());

    // identification by the full sets holds
    let out = run(&["verify", "--theorem", "3.4.2", "--g", "4"]);
    assert_eq!(out.status.code(), Some(0));

    // unknown suite: input error
    let out = run(&["verify", "--theorem", "9.9.9", "--g", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn git_check_csv_and_schema() {
    let out = run(&["git-check", "--g", "4..5", "--kind", "b"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "g,h,mu,max_num,max_den,stable");
    // g = 4 rows for h = 0, 1, 2 and g = 5 rows for h = 0..3
    assert_eq!(text.lines().count(), 1 + 3 + 4);
    assert!(text.lines().skip(1).all(|l| l.ends_with("true")));

    let out = run(&["git-check", "--g", "4", "--kind", "b", "--schema"]);
    assert!(stdout(&out).starts_with("column,description"));

    let out = run(&["git-check", "--g", "4", "--kind", "z"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theta_pipeline_round_trip() {
    let dir = std::env::temp_dir().join("splitcurves-cli-theta");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg_path = dir.join("config.json");
    let out = run(&[
        "theta-compute",
        "--g",
        "4",
        "--seed",
        "7",
        "--out",
        cfg_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cfg = std::fs::read_to_string(&cfg_path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&cfg).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 30);

    let out = run(&["recover-nodes", "--g", "4", "--in", cfg_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);

    let out = run(&["reconstruct", "--g", "4", "--in", cfg_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 2);

    // the hyperelliptic configuration is rejected at reconstruction
    let degen_path = dir.join("degen.json");
    let out = run(&[
        "theta-hat-hyperelliptic",
        "--g",
        "4",
        "--seed",
        "5",
        "--out",
        degen_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["reconstruct", "--g", "4", "--in", degen_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seeded_outputs_are_byte_identical() {
    for args in [
        vec!["theta-compute", "--g", "3", "--seed", "11"],
        vec!["enumerate", "--g", "3"],
        vec!["verify", "--theorem", "degree-identity", "--g", "3"],
        vec!["normalbundle-cert", "--g-min", "4", "--g-max", "8"],
    ] {
        let a = stdout(&run(&args));
        let b = stdout(&run(&args));
        assert_eq!(a, b, "{args:?}");
        assert!(!a.is_empty());
    }
}

#[test]
fn normalbundle_cert_values() {
    let out = run(&["normalbundle-cert", "--g-min", "4", "--g-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["degree_bound"], -5);
    assert_eq!(lines[0]["splitting"]["degrees"], serde_json::json!([-5, -5]));
    assert_eq!(lines[1]["degree_bound"], -12);
    assert_eq!(lines[2]["degree_bound"], -28);

    let out = run(&["normalbundle-cert", "--g-min", "3", "--g-max", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--g", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["classes"], 7);
    assert!(v["graphs"][0]["degree_identity_ok"].as_bool().unwrap());

    let out = run(&["enumerate", "--g", "99"]);
    assert_eq!(out.status.code(), Some(2));
}
