use num_rational::Ratio;
use serde_json::{json, Value};
use std::io::Write;
use std::process::{Command, Output};
use tempfile::NamedTempFile;

fn doc(v: &Value) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

fn raw_doc(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn ea(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ea")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = ea(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn l83() -> NamedTempFile {
    doc(&json!({"kind": "mv_product", "denominator": 8, "arity": 3}))
}

#[test]
fn validate_exit_codes() {
    let b = doc(&json!({"kind": "boolean", "atoms": 3}));
    assert_eq!(run(&["validate", path(&b)]).0, 0);

    // L_4 with 1/4 ⊕ 3/4 removed
    let mut sums = Vec::new();
    for a in 0..=4usize {
        for b in 0..=4 - a {
            if (a, b) != (1, 3) && (a, b) != (3, 1) {
                sums.push(json!([a, b, a + b]));
            }
        }
    }
    let broken = doc(&json!({"kind": "table", "size": 5, "zero": 0, "one": 4, "sums": sums}));
    let (code, out, _) = run(&["validate", path(&broken)]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] E2"), "{out}");

    let bad = raw_doc("{\"kind\": \"boolean\",\n \"atoms\": ");
    let (code, _, err) = run(&["validate", path(&bad)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let unknown = doc(&json!({"kind": "boolean", "atoms": 2, "colour": "red"}));
    assert_eq!(run(&["validate", path(&unknown)]).0, 2);
    assert_eq!(run(&["validate", "/nonexistent/doc.json"]).0, 2);
}

#[test]
fn validate_json_is_a_report() {
    let b = doc(&json!({"kind": "boolean", "atoms": 2}));
    let (code, out, _) = run(&["validate", path(&b), "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["title"].is_string());
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["passed"], json!(true));
        assert!(c["name"].is_string() && c["mode"].is_string());
    }
}

#[test]
fn analyze_examples() {
    let (code, out, _) = run(&["analyze", path(&l83())]);
    assert_eq!(code, 0);
    assert!(out.contains("spectral: yes; blocks: 1; |P|=8"), "{out}");

    let mo2 = doc(&json!({"kind": "fixture", "name": "mo2"}));
    let (_, out, _) = run(&["analyze", path(&mo2)]);
    assert!(out.contains("spectral: no (") && out.contains("P ≠ E_S"), "{out}");

    let chain = json!({"kind": "mv_product", "denominator": 8, "arity": 1});
    let hs = doc(&json!({
        "kind": "horizontal_sum", "left": chain, "right": chain,
        "left_state": ["1/8"], "right_state": ["1/8"]
    }));
    let (code, out, _) = run(&["analyze", path(&hs), "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["size"], json!(16));
    // P = {0, 1} cannot compare elements of different chains
    assert_eq!(v["spectral"], json!(false));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
}

#[test]
fn spectral_table_rows() {
    let (code, out, _) = run(&["spectral", path(&l83()), "--element", "[2,4,7]", "--depth", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "level,k,lambda,projection");
    for want in ["2,1,1/4,\"(1,0,0)\"", "1,1,1/2,\"(1,1,0)\"", "2,3,3/4,\"(1,1,0)\""] {
        assert!(rows.contains(&want), "{out}");
    }
    assert_eq!(rows.len(), 6);

    let (code, out, _) = run(&["spectral", path(&l83()), "--element", "[2,4,7]", "--lambda", "1/3"]);
    assert_eq!(code, 0);
    assert!(out.contains("(1,0,0)"), "{out}");

    let (code, _, err) = run(&["spectral", path(&l83()), "--element", "[9,0,0]"]);
    assert_eq!(code, 2);
    assert!(err.contains("not found"), "{err}");

    let mo2 = doc(&json!({"kind": "fixture", "name": "mo2"}));
    let (code, _, err) = run(&["spectral", path(&mo2), "--element", "\"1\""]);
    assert_eq!(code, 2);
    assert!(err.contains("not spectral"), "{err}");
}

#[test]
fn spectral_matrix() {
    let m = doc(&json!({"kind": "matrix", "dim": 2}));
    let (code, out, _) = run(&[
        "spectral",
        path(&m),
        "--element",
        "[\"1/2\",\"1/4\",\"1/4\",\"1/2\"]",
        "--depth",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["lambda"] == "1/4").unwrap();
    let want = [[0.5, -0.5], [-0.5, 0.5]];
    for i in 0..2 {
        for j in 0..2 {
            let x = row["projection"][i][j].as_f64().unwrap();
            assert!((x - want[i][j]).abs() < 1e-9);
        }
    }
}

#[test]
fn check_spectral_exit_codes() {
    let b = doc(&json!({"kind": "boolean", "atoms": 3}));
    assert_eq!(run(&["check-spectral", path(&b)]).0, 0);
    let mo2 = doc(&json!({"kind": "fixture", "name": "mo2"}));
    let (code, out, _) = run(&["check-spectral", path(&mo2)]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] P = E_S"), "{out}");
}

#[test]
fn group_examples() {
    let l22 = doc(&json!({"kind": "mv_product", "denominator": 2, "arity": 2}));
    let (code, out, _) = run(&["group", path(&l22), "--g", "3,-1", "--lambda", "1/2"]);
    assert_eq!(code, 0);
    assert!(out.contains("(0,2)"), "{out}");

    let (code, out, _) = run(&["group", path(&l22), "--g", "3,-1", "--approx", "-2,-1,0,1,2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bound"], json!(1));
    assert_eq!(v["parts"].as_array().unwrap().len(), 4);

    let (code, out, _) = run(&["group", path(&l22), "--g", "3,-1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["plus"], json!([3, 0]));
    assert_eq!(v["norm"], json!("3/2"));

    assert_eq!(run(&["group", path(&l22), "--g", "3,-1", "--approx", "-1,0,1"]).0, 2);
}

#[test]
fn expect_average_state() {
    let (code, out, _) = run(&[
        "expect",
        path(&l83()),
        "--element",
        "[2,4,7]",
        "--state",
        "average",
        "--depth",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let q = |k: &str| v[k].as_str().unwrap().parse::<Ratio<i64>>().unwrap();
    let (lo, hi) = (q("lo"), q("hi"));
    assert_eq!(hi - lo, Ratio::new(1, 16));
    let s = Ratio::new(13, 24);
    assert!(lo <= s && s <= hi);
    assert_eq!(q("value"), s);

    let (code, _, _) = run(&["expect", path(&l83()), "--element", "[2,4,7]", "--state", "1/2,1/2,1/2"]);
    assert_eq!(code, 2);
}

#[test]
fn seed_flag_is_accepted() {
    let b = doc(&json!({"kind": "boolean", "atoms": 2}));
    assert_eq!(run(&["--seed", "7", "validate", path(&b)]).0, 0);
    assert_eq!(run(&["validate", path(&b), "--format", "csv"]).0, 0);
}
