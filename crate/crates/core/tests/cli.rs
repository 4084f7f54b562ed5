use std::process::{Command, Output};

fn qminor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qminor"))
        .args(args)
        .env_remove("QMINOR_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn commute_prints_verified_relation() {
    let o = qminor(&[
        "commute",
        "--n",
        "4",
        "--lhs",
        "[3 4|1 3]",
        "--rhs",
        "[1 2|2 4]",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("[3 4|1 3][1 2|2 4] ≡ [1 2|2 4][3 4|1 3] + (-q^-1 + q)*[1 2|3 4][3 4|1 2]"),
        "{out}"
    );
    assert!(out.contains("verified: true"));
}

#[test]
fn commute_equal_minors_is_trivial() {
    let o = qminor(&[
        "commute",
        "--n",
        "3",
        "--lhs",
        "[1 2|2 3]",
        "--rhs",
        "[1 2|2 3]",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("[1 2|2 3][1 2|2 3] ≡ [1 2|2 3][1 2|2 3]\n"),
        "{out}"
    );
    assert!(out.contains("verified: true"));
}

#[test]
fn commute_formats() {
    let latex = stdout(&qminor(&[
        "commute",
        "--n",
        "4",
        "--lhs",
        "[3 4|1 3]",
        "--rhs",
        "[1 2|2 4]",
        "--format",
        "latex",
    ]));
    assert!(
        latex.contains("[34,13][12,24] \\equiv [12,24][34,13]"),
        "{latex}"
    );
    let json = stdout(&qminor(&[
        "commute",
        "--n",
        "4",
        "--lhs",
        "[3 4|1 3]",
        "--rhs",
        "[1 2|2 4]",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["lead"][0], "[3 4|1 3]");
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_minor_syntax_fails_with_usage() {
    let o = qminor(&[
        "commute",
        "--n",
        "4",
        "--lhs",
        "[3 x|1 3]",
        "--rhs",
        "[1 2|2 4]",
    ]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--lhs"), "{err}");
}

#[test]
fn verify_round_trip_and_perturbation() {
    let dir = std::env::temp_dir().join(format!("qminor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rel.json");
    let json = stdout(&qminor(&[
        "commute",
        "--n",
        "4",
        "--lhs",
        "[3 4|3 4]",
        "--rhs",
        "[1 2|1 2]",
        "--format",
        "json",
    ]));
    std::fs::write(&path, &json).unwrap();
    let ok = qminor(&["verify", "--file", path.to_str().unwrap()]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("verified: true"));

    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["terms"][1]["coef"] = serde_json::json!([[0, "7"]]);
    std::fs::write(&path, v.to_string()).unwrap();
    let bad = qminor(&["verify", "--file", path.to_str().unwrap()]);
    assert!(!bad.status.success());
    assert!(stdout(&bad).contains("residual:"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_summary_and_output_file() {
    let dir = std::env::temp_dir().join(format!("qminor-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.jsonl");
    let o = qminor(&[
        "sweep",
        "--n",
        "3",
        "--max-size",
        "2",
        "--jobs",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(summary["total"], 324);
    assert_eq!(summary["failed"], 0);
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 325);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_rejects_bad_bounds() {
    let o = qminor(&["sweep", "--n", "3", "--max-size", "4"]);
    assert!(!o.status.success());
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qminor"))
        .args(["sweep", "--n", "2", "--max-size", "1"])
        .env("QMINOR_JOBS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn examples_all_pass() {
    let o = qminor(&["examples"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("5/5 pass"));
}

#[test]
fn q1_check_small() {
    let o = qminor(&["q1-check", "--n", "3", "--max-size", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("324/324"));
}
