use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symstrat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn strata_rows() {
    let rows = json(&["strata", "--m", "3", "--n", "2"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let row = rows.iter().find(|r| r["pi"] == serde_json::json!([2, 1])).unwrap();
    assert_eq!(row["dim"], 4);
    assert_eq!(row["tangent_dim"], 7);
    assert_eq!(row["germ_singular"], true);

    let single = json(&["strata", "--m", "1", "--n", "2"]);
    assert_eq!(single.as_array().unwrap().len(), 1);
    assert_eq!(single[0]["germ_singular"], false);

    let dims: Vec<u64> = json(&["strata", "--m", "4", "--n", "3"])
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [3, 6, 6, 9, 12]);

    let table = stdout(&["strata", "--m", "4", "--n", "3"]);
    assert_eq!(table.lines().count(), 6);
}

#[test]
fn poset_outputs() {
    let dot = stdout(&["poset", "--m", "4", "--format", "dot"]);
    assert!(dot.starts_with("digraph partitions_4 {"));
    assert_eq!(dot.matches(" -> ").count(), 5);
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('"') && !l.contains("->")).count(), 5);

    let p2 = json(&["poset", "--m", "2"]);
    assert_eq!(p2["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(p2["hasse_edges"].as_array().unwrap().len(), 1);

    let p6 = json(&["poset", "--m", "6"]);
    assert_eq!(p6["nodes"].as_array().unwrap().len(), 11);
}

#[test]
fn singular_chain_levels() {
    let chain = json(&["singular-chain", "--m", "3", "--n", "2"]);
    let expect = [
        (serde_json::json!([[1, 1, 1]]), serde_json::json!(6)),
        (serde_json::json!([[2, 1]]), serde_json::json!(4)),
        (serde_json::json!([[3]]), serde_json::json!(2)),
        (serde_json::json!([]), Value::Null),
    ];
    for (t, (anti, dim)) in expect.iter().enumerate() {
        assert_eq!(&chain[t]["antichain"], anti);
        assert_eq!(&chain[t]["dim"], dim);
    }

    let chain = json(&["singular-chain", "--m", "2", "--n", "2"]);
    assert_eq!(chain[1]["antichain"], serde_json::json!([[2]]));
    assert_eq!(chain[1]["dim"], 2);

    let chain = json(&["singular-chain", "--m", "4", "--n", "2"]);
    assert_eq!(chain[2]["antichain"], serde_json::json!([[3, 1], [2, 2]]));
    assert_eq!(chain[2]["dim"], 4);
    assert_eq!(chain[2]["pieces"], 2);
}

#[test]
fn germ_reports() {
    let g = json(&["germ", "--m", "4", "--n", "2", "--type", "2,2", "--target", "2,1,1"]);
    assert_eq!(g["components"].as_array().unwrap().len(), 2);

    let g = json(&["germ", "--m", "5", "--n", "3", "--type", "5"]);
    assert_eq!(g["model"]["factors"], serde_json::json!([5]));
    assert!(g.get("components").is_none());

    let g = json(&["germ", "--m", "3", "--n", "4", "--type", "1,2", "--target", "1,1,1"]);
    let comps = g["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["dim"], 12);

    assert_eq!(code(&["germ", "--m", "3", "--n", "2", "--type", "1,1,1", "--target", "3"]), 2);
}

#[test]
fn invariants_reports() {
    let r = json(&["invariants", "--m", "5", "--n", "3"]);
    assert_eq!(r["discrepancy"], "1/2");
    assert_eq!(r["terminal"], true);
    assert_eq!(r["gorenstein"], false);
    assert_eq!(r["K_X"]["torsion"], 1);

    let r = json(&["invariants", "--m", "2", "--n", "2"]);
    assert_eq!(r["discrepancy"], "0");
    assert_eq!(r["gorenstein"], true);

    let r = json(&["invariants", "--m", "3", "--n", "6"]);
    assert_eq!(r["discrepancy"], "1");

    let out = run(&["invariants", "--m", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("smooth or out-of-scope case"));
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn recover_parameters() {
    let r = json(&["recover", "--dims", "6,4,2"]);
    assert_eq!((r["m"].as_u64(), r["n"].as_u64()), (Some(3), Some(2)));
    assert_eq!(stdout(&["recover", "--dims", "4,2"]), "m=2 n=2\n");

    let out = run(&["recover", "--dims", "5,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not a symmetric-power chain"));
}

#[test]
fn divisor_strata_counts() {
    let count = |m: &str| json(&["divisor-strata", "--m", m]).as_array().unwrap().len();
    assert_eq!(count("1"), 1);
    assert_eq!(count("2"), 3);
    assert_eq!(count("3"), 5);
}

#[test]
fn verify_modes() {
    let out = run(&["verify", "--max-m", "6", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    // timings go to stderr
    assert!(String::from_utf8(out.stderr).unwrap().contains(" ms"));

    let out = run(&["verify", "--max-m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("vacuous"));

    let out = run(&["verify", "--max-m", "5", "--max-n", "2", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL stratification"));
    assert!(text.contains("FAILED: stratification"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["strata", "--m", "3", "--n", "1"]), 2);
    assert_eq!(code(&["strata", "--m", "3", "--n", "2", "--format", "dot"]), 2);
    assert_eq!(code(&["poset", "--m", "0"]), 2);
    assert_eq!(code(&["germ", "--m", "3", "--n", "2", "--type", "2,0,1"]), 2);
    assert_eq!(code(&["verify", "--max-m", "0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn json_round_trips() {
    let cases: [&[&str]; 6] = [
        &["strata", "--m", "4", "--n", "3"],
        &["poset", "--m", "5"],
        &["singular-chain", "--m", "4", "--n", "2"],
        &["germ", "--m", "4", "--n", "2", "--type", "2,2", "--target", "2,1,1"],
        &["invariants", "--m", "4", "--n", "5"],
        &["divisor-strata", "--m", "4"],
    ];
    for args in cases {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let raw = stdout(&full);
        let parsed: Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", raw, "{args:?}");
    }
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("symstrat-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poset.dot");
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["poset", "--m", "3", "--format", "dot", "--out", p]), "");
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["poset", "--m", "3", "--format", "dot"]));
    std::fs::remove_dir_all(&dir).unwrap();
}
