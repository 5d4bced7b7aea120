use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn wed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wed"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parsed JSON report with the timing field zeroed.
fn untimed(o: &Output) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
    if let Some(stats) = v.get_mut("stats") {
        stats["wall_ms"] = 0.into();
    }
    v
}

fn golden_json(name: &str) -> serde_json::Value {
    serde_json::from_str(&golden(name)).unwrap()
}

fn solve_json(file: &str) -> Output {
    wed(&[
        "solve",
        "--input",
        fixture(file).to_str().unwrap(),
        "--json",
    ])
}

#[test]
fn solve_p4() {
    let o = solve_json("p4.wed");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(untimed(&o), golden_json("p4.solve.json"));
    assert!(stdout(&o).starts_with(
        "{\"status\":\"solved\",\"weight\":2,\"vertices\":[1,4],\"stats\":{\"min_degree\":1,"
    ));
}

#[test]
fn solve_c4() {
    let o = solve_json("c4.wed");
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), golden("c4.solve.json"));
}

#[test]
fn solve_c6_and_k2() {
    assert_eq!(untimed(&solve_json("c6.wed")), golden_json("c6.solve.json"));
    let o = solve_json("k2.wed");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(untimed(&o), golden_json("k2.solve.json"));
}

#[test]
fn check_p6_reports_witness() {
    let o = wed(&["check-p6", "--input", fixture("p6.wed").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), golden("p6.check.txt"));
    let o = wed(&[
        "check-p6",
        "--input",
        fixture("c6.wed").to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"status\":\"p6_free\"}\n");
}

#[test]
fn solve_with_check_p6_refuses_p6() {
    let o = wed(&[
        "solve",
        "--check-p6",
        "--json",
        "--input",
        fixture("p6.wed").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(
        stdout(&o),
        "{\"status\":\"not_p6_free\",\"witness\":[1,2,3,4,5,6]}\n"
    );
}

#[test]
fn class_violation_exit_code() {
    let o = solve_json("p7.wed");
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(stdout(&o), golden("p7.solve.json"));
}

#[test]
fn verify_only() {
    let p4 = fixture("p4.wed");
    let o = wed(&[
        "solve",
        "--input",
        p4.to_str().unwrap(),
        "--verify-only",
        "1,3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "{\"status\":\"invalid\",\"witness\":2,\"count\":2}\n"
    );
    let o = wed(&[
        "verify",
        "--input",
        p4.to_str().unwrap(),
        "--set",
        "1,4",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"status\":\"valid\",\"weight\":2}\n");
    let o = wed(&["verify", "--input", p4.to_str().unwrap(), "--set", "2"]);
    assert_eq!(stdout(&o), "status: invalid\nwitness: 4\ncount: 0\n");
}

#[test]
fn oracle_matches_solver() {
    for f in ["p4.wed", "c4.wed", "c6.wed", "k2.wed"] {
        let path = fixture(f);
        let a = wed(&[
            "solve",
            "--oracle",
            "--json",
            "--input",
            path.to_str().unwrap(),
        ]);
        let b = wed(&["oracle", "--json", "--input", path.to_str().unwrap()]);
        assert_eq!(stdout(&a), stdout(&b));
        let fast = solve_json(f);
        assert_eq!(a.status.code(), fast.status.code(), "{f}");
        let va: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
        let vf: serde_json::Value = serde_json::from_str(&stdout(&fast)).unwrap();
        assert_eq!(va["weight"], vf["weight"], "{f}");
    }
}

#[test]
fn parallel_output_matches() {
    let path = fixture("c6.wed");
    let a = wed(&[
        "solve",
        "--parallel",
        "--json",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(untimed(&a), untimed(&solve_json("c6.wed")));
}

#[test]
fn input_errors_exit_2() {
    let o = wed(&["solve", "--input", fixture("bad.wed").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(
        err.contains("line 2") && err.contains("vertex 5 out of range"),
        "{err}"
    );
    assert_eq!(
        wed(&["solve", "--input", "/nonexistent.wed"]).status.code(),
        Some(2)
    );
    assert_eq!(wed(&["solve"]).status.code(), Some(2));
}

#[test]
fn text_report() {
    let o = wed(&["solve", "--input", fixture("p4.wed").to_str().unwrap()]);
    let text = stdout(&o);
    assert!(
        text.starts_with("status: solved\nweight: 2\nvertices: 1 4\n"),
        "{text}"
    );
}

#[test]
fn gen_is_seeded_and_round_trips() {
    let a = wed(&[
        "gen",
        "--kind",
        "unipolar",
        "--n",
        "12",
        "--p",
        "0.3",
        "--seed",
        "7",
        "--max-weight",
        "9",
    ]);
    let b = Command::new(env!("CARGO_BIN_EXE_wed"))
        .args([
            "gen",
            "--kind",
            "unipolar",
            "--n",
            "12",
            "--p",
            "0.3",
            "--max-weight",
            "9",
        ])
        .env("WED_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let c = Command::new(env!("CARGO_BIN_EXE_wed"))
        .args([
            "gen",
            "--kind",
            "unipolar",
            "--n",
            "12",
            "--p",
            "0.3",
            "--max-weight",
            "9",
        ])
        .env("WED_SEED", "8")
        .output()
        .unwrap();
    assert_ne!(stdout(&a), stdout(&c));

    let dir = std::env::temp_dir().join(format!("wed-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("g.wed");
    std::fs::write(&file, stdout(&a)).unwrap();
    let solved = wed(&["solve", "--json", "--input", file.to_str().unwrap()]);
    let oracle = wed(&["oracle", "--json", "--input", file.to_str().unwrap()]);
    let vs: serde_json::Value = serde_json::from_str(&stdout(&solved)).unwrap();
    let vo: serde_json::Value = serde_json::from_str(&stdout(&oracle)).unwrap();
    if solved.status.code() != Some(5) {
        assert_eq!(vs["weight"], vo["weight"]);
    }
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(
        wed(&["gen", "--kind", "nope", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        wed(&["gen", "--kind", "gnp", "--n", "0"]).status.code(),
        Some(2)
    );
}
