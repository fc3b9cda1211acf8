use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_triangle-forge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn delannoy_csv_from_binary() {
    let o = run(&["gen", "--construction", "delannoy", "--b", "1", "--c", "1", "--d", "1", "--N", "4", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.lines().last(), Some("1,7,13,7,1"));
}

#[test]
fn recursion_and_series_csv_are_byte_identical() {
    for (b, c, d) in [("1", "1", "1"), ("2", "1/2", "3"), ("0", "1/3", "5/2")] {
        let common = ["--b", b, "--c", c, "--d", d, "--N", "9", "--format", "csv"];
        let rec = run(&[&["gen", "--construction", "delannoy"][..], &common].concat());
        let ser = run(&[&["gen", "--construction", "bivariate"][..], &common].concat());
        let conv = run(&[&["gen", "--construction", "delannoy-conv"][..], &common].concat());
        assert!(rec.status.success());
        assert_eq!(rec.stdout, ser.stdout);
        assert_eq!(rec.stdout, conv.stdout);
    }
}

#[test]
fn json_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.json");
    let o = run(&[
        "gen", "--construction", "hoggar-preset", "--a", "0:1,3/2,1", "--N", "8", "--format", "json",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = triangle_forge::Triangle::from_json(&text).unwrap();
    assert_eq!(parsed.to_json() + "\n", text);
    assert_eq!(parsed.provenance().construction, "hoggar-preset");

    let v = run(&["verify", "--check", "rows-log-concave", "--input", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{v:?}");
    let report: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(report["check"], "rows-log-concave");
    assert_eq!(report["passed"], true);
    assert_eq!(report["witnesses"], serde_json::json!([]));
}

#[test]
fn failing_verification_exits_one_with_witness_json() {
    let o = run(&["verify", "--check", "rows-log-concave", "--construction", "convarray", "--a", "0:1,0,0,4", "--q", "0:1", "--N", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], false);
    let w = &report["witnesses"][0];
    assert!(w["at"].is_array() && w["lhs"].is_string() && w["rhs"].is_string());
}

#[test]
fn tail_command_outputs() {
    let cases = [
        (["--a", "L0|0:1|R1/2", "--b", "L1|0:1|R1", "--p", "0"], "finite 2\n"),
        (["--a", "L1|0:1|R1", "--b", "L1|0:1|R1", "--p", "0"], "divergent both\n"),
        (["--a", "L0|0:1|R0", "--b", "L1|0:3|R1", "--p", "5"], "finite 3\n"),
    ];
    for (args, want) in cases {
        let o = run(&[&["tail"][..], &args].concat());
        assert!(o.status.success());
        assert_eq!(stdout(&o), want);
    }
}

#[test]
fn max_n_cap_from_environment() {
    let args = ["gen", "--construction", "pascal-preset", "--N", "12", "--format", "csv"];
    let o = bin().args(args).env("TRIANGLE_FORGE_MAX_N", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("TRIANGLE_FORGE_MAX_N"));
    let o = bin().args(args).env("TRIANGLE_FORGE_MAX_N", "12").output().unwrap();
    assert!(o.status.success());
    let o = bin().args(["gen", "--construction", "pascal-preset", "--N", "1001"]).env_remove("TRIANGLE_FORGE_MAX_N").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    for args in [
        &["gen", "--construction", "pascal-preset", "--N", "-1"][..],
        &["gen", "--construction", "nope", "--N", "1"],
        &["gen", "--construction", "convarray", "--a", "0:1,,2", "--q", "0:1", "--N", "2"],
        &["tail", "--a", "L1|0:1|R1", "--b", "garbage"],
        &["verify", "--check", "lemma31", "--a", "0:1,0,1", "--q", "0:1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn search_and_fact12_commands() {
    let o = run(&["search", "--max-len", "3", "--bound", "2"]);
    assert_eq!(stdout(&o), "a 0:1,1 b 0:1,1 conv 0:1,2,1 index 1\n");
    let o = run(&["verify", "--check", "fact12", "--max-len", "4", "--bound", "2", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "fact12-equivalence: passed\n");
}
