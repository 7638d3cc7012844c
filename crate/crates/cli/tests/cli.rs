use std::process::{Command, Output};

fn irrgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irrgeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn range_lists_valid_indices() {
    let o = irrgeo(&["range", "--family", "triangular", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("works: 2,3,4,5; fails: 6,7,8,9,10"));
}

#[test]
fn verify_convergent_passes() {
    let o = irrgeo(&[
        "verify",
        "--family",
        "triangular",
        "--n",
        "3",
        "--convergent",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("pair (22, 9)"));
    assert!(out.contains("result: PASS"));
}

#[test]
fn tennenbaum_alias() {
    let o = irrgeo(&["census", "--family", "tennenbaum", "--a", "7", "--b", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("union 41/1 blank 8/1 exactly-2 9/1"));
}

#[test]
fn out_of_window_exits_two() {
    let o = irrgeo(&["verify", "--family", "hex6", "--a", "7", "--b", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("a < 3b"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["verify", "--family", "triangular", "--a", "3", "--b", "1"][..],
        &["verify", "--family", "hex6"],
        &["verify", "--family", "sqrt2", "--convergent", "0"],
        &["verify", "--family", "pentagon", "--a", "3", "--b", "2"],
        &[
            "verify",
            "--family",
            "triangular",
            "--n",
            "1",
            "--a",
            "3",
            "--b",
            "2",
        ],
        &["frobnicate"],
    ] {
        assert_eq!(irrgeo(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(irrgeo(&["--help"]).status.code(), Some(0));
}

#[test]
fn chain_stops_and_reports_reason() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.json");
    let o = irrgeo(&[
        "chain",
        "--family",
        "sqrt2",
        "--convergent",
        "6",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let run = &json["runs"][0];
    assert_eq!(run["kind"], "chain");
    assert_eq!(run["input_pair"], serde_json::json!(["99", "70"]));
    assert_eq!(run["stop_reason"], "non-positive");
    assert!(run["chain"].as_array().unwrap().len() >= 4);
}

#[test]
fn json_uses_exact_strings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let o = irrgeo(&[
        "verify",
        "--family",
        "triangular",
        "--n",
        "2",
        "--a",
        "7",
        "--b",
        "4",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(json["version"], 1);
    let census = &json["runs"][0]["census"];
    assert_eq!(census["big_area"], "49/2");
    assert_eq!(census["exactly2_area"], "3/2");
    assert_eq!(census["blank_area"], "2/1");
}

#[test]
fn sequence_and_density() {
    let o = irrgeo(&["sequence", "--limit", "300"]);
    assert!(stdout(&o).contains("indices: 0,1,8,49,288"));
    let o = irrgeo(&["density", "--x", "10000"]);
    let out = stdout(&o);
    assert!(out.contains("perfect squares <= 10000: 100"));
    assert!(out.contains("rational square root: 1/1"));
}

#[test]
fn svg_colors_by_depth() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.svg");
    let o = irrgeo(&[
        "svg",
        "--family",
        "triangular",
        "--n",
        "5",
        "--a",
        "27",
        "--b",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("class=\"depth-2\"").count(), 12);
    assert_eq!(svg.matches("class=\"depth-3\"").count(), 6);
    assert_eq!(svg.matches("class=\"depth-1\"").count(), 15);
}
