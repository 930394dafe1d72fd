use std::process::{Command, Output};

use serde_json::Value;

fn ellfluct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellfluct"))
        .args(args)
        .env("ELLFLUCT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn result_text(out: &Output) -> String {
    json_of(out)["result"]["text"].as_str().unwrap().to_string()
}

#[test]
fn enumerate_rows() {
    let out = ellfluct(&["enumerate", "--p", "2", "--q", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.starts_with("index,pairs,spokes"));

    let out = ellfluct(&["enumerate", "--p", "3", "--q", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn enumerate_finds_sample() {
    let out = ellfluct(&["enumerate", "--p", "4", "--q", "6", "--spokes", "2", "--decompose"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let sample: Value = serde_json::from_str("[[1,5],[2,10],[3,4],[6,9],[7,8]]").unwrap();
    let hit = v["result"]["diagrams"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["pairs"] == sample)
        .expect("sample diagram listed");
    let dec = &hit["decomposition"];
    assert_eq!(dec["U"], serde_json::json!([1, 2]));
    assert_eq!(dec["V"], serde_json::json!([5, 10]));
    assert_eq!(dec["iota"], serde_json::json!([0, 2]));
    assert_eq!(dec["o"], serde_json::json!([4, 0]));
    assert!(v["result"]["diagrams"].as_array().unwrap().iter().all(|d| d["spokes"] == 2));
}

#[test]
fn enumerate_cap_and_bad_input() {
    assert_eq!(ellfluct(&["enumerate", "--p", "8", "--q", "7"]).status.code(), Some(2));
    assert_eq!(ellfluct(&["enumerate", "--p", "0", "--q", "2"]).status.code(), Some(2));
    assert_eq!(ellfluct(&["enumerate", "--p", "2"]).status.code(), Some(2));
    assert_eq!(ellfluct(&["enumerate", "--p", "9", "--q", "9", "--exhaustive"]).status.code(), Some(2));
}

#[test]
fn cov_examples() {
    let out = ellfluct(&["cov", "--family", "pure", "--p", "2", "--q", "2", "--channel", "complex", "--symbolic", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result_text(&out), "2*g1^2");

    let out = ellfluct(&["cov", "--family", "pure-adjoint", "--p", "3", "--q", "3", "--gamma", "0", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["value"]["exact"], "3");

    let out = ellfluct(&["cov", "--family", "alternating", "--p", "1", "--q", "1", "--channel", "real", "--symbolic", "--method", "semiclosed"]);
    assert_eq!(result_text(&out), "2*g1^2 + 2");
}

#[test]
fn cov_exact_rational_gamma() {
    let out = ellfluct(&["cov", "--family", "pure", "--p", "2", "--q", "2", "--gamma", "1/3", "--method", "closed", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["value"]["exact"], "2/9");
    assert_eq!(v["result"]["check"]["agree"], true);
}

#[test]
fn cov_custom_two_colors() {
    let out = ellfluct(&[
        "cov", "--family", "custom", "--tau-inner", "xsxs", "--colors-inner", "1,1,2,2", "--tau-outer", "x1 s1 x2 s2",
        "--channel", "real", "--method", "oracle", "--check",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["check"]["agree"], true);
    assert_eq!(v["result"]["check"]["other"], "2*g2^2 + 2*g1^2 + 6");
}

#[test]
fn cov_oracle_value_at_n() {
    let out = ellfluct(&["cov", "--family", "pure", "--p", "1", "--q", "1", "--channel", "real", "--method", "oracle", "--gamma", "0.3", "--N", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["value"]["exact"], "13/10");
}

#[test]
fn cov_incompatible_flags() {
    let cases: &[&[&str]] = &[
        &["cov", "--family", "pure", "--p", "1", "--q", "1", "--gamma", "0.5", "--symbolic"],
        &["cov", "--family", "custom", "--tau-inner", "xs", "--tau-outer", "xs", "--method", "closed"],
        &["cov", "--family", "pure", "--p", "1", "--q", "1", "--method", "mc"],
        &["cov", "--family", "pure", "--p", "1", "--q", "1", "--method", "mc", "--symbolic"],
        &["cov", "--family", "pure", "--p", "1", "--q", "1", "--reps", "500"],
        &["cov", "--family", "pure", "--p", "1", "--tau-inner", "x"],
        &["cov", "--family", "pure", "--p", "1", "--q", "1", "--gamma", "1.5"],
        &["cov", "--family", "custom", "--tau-inner", "xq", "--tau-outer", "x"],
        &["cov", "--family", "pure", "--p", "1", "--q", "1", "--method", "mc", "--gamma", "0.5", "--reps", "10"],
    ];
    for args in cases {
        let out = ellfluct(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = ellfluct(&["cov", "--family", "custom", "--tau-inner", "x s q", "--tau-outer", "x"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("'q'") && err.contains("position 3"), "{err}");
}

#[test]
fn cov_monte_carlo_is_deterministic() {
    let args = [
        "cov", "--family", "pure", "--p", "1", "--q", "1", "--channel", "real", "--method", "mc", "--gamma", "0.3", "--N",
        "16", "--reps", "2000", "--seed", "11", "--check",
    ];
    let a = ellfluct(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let b = ellfluct(&["--threads", "1"].iter().chain(args.iter()).copied().collect::<Vec<_>>());
    let (mut va, mut vb) = (json_of(&a), json_of(&b));
    va["manifest"]["timestamp"] = Value::Null;
    vb["manifest"]["timestamp"] = Value::Null;
    assert_eq!(va, vb);
    let r = &va["result"];
    assert_eq!(r["N"], 16);
    assert_eq!(r["reps"], 2000);
    assert_eq!(r["seed"], 11);
    assert!(r["generator"].as_str().unwrap().contains("ChaCha8"));
    assert_eq!(r["estimate"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_suites() {
    for suite in ["counts", "fuss-catalan", "real-transpose", "closed-vs-semiclosed"] {
        let out = ellfluct(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json_of(&out)["result"]["passed"], true);
    }
    let out = ellfluct(&["verify", "--suite", "oracle", "--max-letters", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_all() {
    let out = ellfluct(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["manifest"]["params"]["suite"], "all");
    assert_eq!(v["result"]["suites"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        r#"[{"inner": [[1, "xs"], [2, "xs"]], "outer": [[1, "xs"], [2, "xs"]], "channel": "real"},
            {"inner": [[1, "x"], [2, "xx"]], "outer": [[1, "xs"], [2, "x"], [3, "xx"]], "channel": "complex"}]"#,
    )
    .unwrap();
    let out = ellfluct(&["verify", "--suite", "freeness", "--grid", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[{"inner": [[1, "x"], [1, "x"]], "outer": [[1, "xs"], [2, "xs"]], "channel": "complex"}]"#)
        .unwrap();
    let out = ellfluct(&["verify", "--suite", "freeness", "--grid", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    let check = &v["result"]["suites"][0]["checks"][0];
    assert_eq!(check["rejected"], true);
    assert!(check["detail"]["rejected"].as_str().unwrap().contains("alternating"));

    let missing = dir.path().join("none.json");
    assert_eq!(ellfluct(&["verify", "--suite", "freeness", "--grid", missing.to_str().unwrap()]).status.code(), Some(2));
}
