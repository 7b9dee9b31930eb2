use std::process::{Command, Output};

fn ncsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncsf")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ncsf(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn expand_examples() {
    assert_eq!(stdout(&["expand", "Hq", "(1,1,1)", "--in", "s"]), "s(1,1,1) + q*s(2,1) + q^2*s(1,2) + q^3*s(3)\n");
    assert_eq!(stdout(&["expand", "Htilde", "(2)", "--in", "s"]), "q*s(1,1) + s(2)\n");
    assert_eq!(stdout(&["expand", "s", "(2)", "--in", "s"]), "s(2)\n");
    assert_eq!(stdout(&["expand", "Hq", "1^2,2"]), stdout(&["expand", "Hq", "(1,1,2)"]));
    assert_eq!(stdout(&["expand", "Pq", "(2)", "--in", "F"]), "-q*F(1,1) + F(2)\n");
}

#[test]
fn matrices_match_fixtures() {
    let cases = [
        ("Hq", "2", include_str!("../../core/tests/fixtures/hq_2.csv")),
        ("Hq", "3", include_str!("../../core/tests/fixtures/hq_3.csv")),
        ("Hq", "4", include_str!("../../core/tests/fixtures/hq_4.csv")),
        ("Htilde", "2", include_str!("../../core/tests/fixtures/htilde_2.csv")),
        ("Htilde", "3", include_str!("../../core/tests/fixtures/htilde_3.csv")),
        ("Htilde", "4", include_str!("../../core/tests/fixtures/htilde_4.csv")),
        ("nabla", "2", include_str!("../../core/tests/fixtures/nabla_2.csv")),
        ("nabla", "3", include_str!("../../core/tests/fixtures/nabla_3.csv")),
    ];
    for (family, n, fixture) in cases {
        assert_eq!(stdout(&["matrix", family, n, "--format", "csv"]), fixture, "{family} {n}");
    }
}

#[test]
fn other_formats() {
    let json = stdout(&["expand", "Hq", "(2)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["basis"], "s");
    let latex = stdout(&["matrix", "Hq", "2", "--format", "latex"]);
    assert!(latex.contains("\\end{array}"));
    assert!(latex.contains("q"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    let out = ncsf(&["matrix", "Hq", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), include_str!("../../core/tests/fixtures/hq_3.csv"));
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "fubini", "4"]), "75\n");
    assert_eq!(stdout(&["count", "fubini", "7"]), "47293\n");
    assert_eq!(stdout(&["count", "increasing_pref", "5"]), "16\n");
    assert_eq!(stdout(&["count", "fubini", "2", "--q", "q", "--t", "t"]), "1 + t + q\n");
}

#[test]
fn pairs() {
    assert_eq!(stdout(&["pair", "Hqt", "(2)", "Hqt", "(1,1)"]), "-1 + q*t\n");
    assert_eq!(stdout(&["pair", "s", "(1,1)", "s", "(2)"]), "1\n");
    assert_eq!(stdout(&["pair", "Pq", "(2)", "Hq", "(2)"]), "1\n");
}

#[test]
fn verify_exit_codes() {
    let out = ncsf(&["verify", "hqt-scalar", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS hqt-scalar"));
    let out = ncsf(&["verify", "all", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 8);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["expand", "Foo", "(1)"][..],
        &["expand", "Hq", "(0,1)"],
        &["expand", "Hq", "(2"],
        &["expand", "Pq", "(2)", "--in", "s"],
        &["matrix", "Hq", "0"],
        &["matrix", "Hq", "13"],
        &["verify", "nope"],
        &["count", "derangements", "3"],
        &["expand", "Hq", "(2)", "--format", "xml"],
    ] {
        assert_eq!(ncsf(args).status.code(), Some(2), "{args:?}");
    }
}
