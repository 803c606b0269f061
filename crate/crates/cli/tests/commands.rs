use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paramodular"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn consani_scholten_example() {
    let (code, out, _) = run(&["example", "consani-scholten"]);
    assert_eq!(code, 0);
    assert!(out.contains("weight k = 3"), "{out}");
    assert!(out.contains("level  N = 2^2*3^2*5^4 = 22500"), "{out}");
    let (code, json, _) = run(&["example", "consani-scholten", "--output", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["k"], 3);
    assert_eq!(v["level"]["value"], "22500");
}

#[test]
fn branches_example_agrees_everywhere() {
    let (code, json, err) = run(&["example", "branches", "--output=json"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let primes = v["primes"].as_array().unwrap();
    let mut branches: Vec<&str> = primes.iter().map(|p| p["theorem"]["branch"].as_str().unwrap()).collect();
    branches.sort();
    branches.dedup();
    assert_eq!(branches, ["(a)", "(b)", "(c) inert", "(c) ramified", "(c) split"]);
    assert!(primes.iter().all(|p| p["theorem_agrees"] == true));
}

#[test]
fn field_command() {
    let (code, out, _) = run(&["field", "5", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Inert, f=2, e=1, d=0"), "{out}");
    let (_, json, _) = run(&["field", "2", "2", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!((v["split_type"].as_str(), v["d"].as_u64()), (Some("ramified"), Some(3)));
}

#[test]
fn verify_tables_passes() {
    let (code, out, _) = run(&["verify-tables", "--seed", "7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().last().unwrap().starts_with("all ok"));
    assert!(out.contains("similitude: 100 trials, seed 7, 0 failure(s)"));
}

#[test]
fn verify_tables_output_is_sorted() {
    let (_, json, _) = run(&["verify-tables", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let ids: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["row_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(v["ok"], true);
}

#[test]
fn local_commands() {
    let va = data("va-split.json");
    let (code, out, _) = run(&["classify", va.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("packet {Va, Vb*}"), "{out}");
    let (code, json, _) = run(&["invariants", va.to_str().unwrap(), "--output", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["row_id"], "Va-unr-unr");
    assert_eq!(v["eps"], "-1");
    assert_eq!(v["l_equality"], true);
}

#[test]
fn malformed_input_exits_2_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"field": {"D": 5}, "form": {"n": 1, "places": [{"p": 2}]}}"#, "form.places[0]"),
        (r#"{"field": {"D": 5}, "form": {"n": -1, "places": []}}"#, "form.n"),
        (r#"{"field": {"D": 9}, "form": {"n": 1, "places": []}}"#, "field.D"),
        (r#"{"field": {"D": 5}, "form": {"n": 1, "places": [{"p": 2, "split_type": "split", "val_level": 1}]}}"#, "form.places[0].split_type"),
        (r#"{"field": {"D": 5}, "form": {"n": 1, "places": [{"p": 11, "index": 2, "val_level": 0}]}}"#, "form.places[0].index"),
        (r#"{"field": {"D": 5}, "form": {"n": 1, "places": [{"p": 2, "val_level": 1, "rep": {"kind": "supercuspidal", "name": "x", "cond": 1, "eps_half": 1}}]}}"#, "form.places[0].rep.cond"),
        (r#"{"field": {"D": 5}, "form": {"n": 1, "places": [{"p": 2, "val_level": 3, "rep": {"kind": "unramified_hecke", "lambda": "0"}}]}}"#, "form.places[0].val_level"),
        (r#"{"field": {"D": 5}, "form": {"n": 1, "color": 3, "places": []}}"#, "form"),
        (r#"{"field": {"D": 5}"#, "."),
    ];
    for (i, (text, path)) in cases.iter().enumerate() {
        let f = dir.path().join(format!("{i}.json"));
        std::fs::write(&f, text).unwrap();
        let (code, out, err) = run(&["transfer", f.to_str().unwrap()]);
        assert_eq!(code, 2, "case {i}: {out}{err}");
        assert!(err.contains(&format!("invalid input at {path}")), "case {i}: {err}");
    }
}

#[test]
fn bad_local_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("x.json");
    std::fs::write(
        &f,
        r#"{"inducing": {"type": "non_split", "extension": {"f": 2, "d": 1, "omega_minus_one": 1},
            "pi0": {"kind": "unramified_hecke", "lambda": "0"}}}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["invariants", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("inducing.extension"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["field", "5"]).0, 2);
    assert_eq!(run(&["transfer", "/nonexistent/input.json"]).0, 2);
    assert_eq!(run(&["example", "consani-scholten", "--primes", "4"]).0, 2);
}

#[test]
fn failed_archimedean_check_exits_1() {
    let (code, out, _) = run(&["example", "consani-scholten", "--tolerance", "1e-300"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}
