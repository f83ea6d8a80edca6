use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn neron(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_neron"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const NORM_ONE: &str =
    r#"{"schema": "neron/1", "name": "n1", "rank": 1, "galois": {"generators": [{"name": "s", "matrix": [["-1"]]}]}, "inertia": ["s"], "frobenius": ""}"#;

#[test]
fn component_group_from_stdin() {
    let out = neron(&["component-group"], Some(NORM_ONE));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "neron/1");
    assert_eq!(r["results"]["component_group"], json!({ "rank": 0, "invariant_factors": [2] }));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert!(r.get("timing").is_none());
    // Normalized echo: integers are numbers again.
    assert_eq!(r["input"]["galois"]["generators"][0]["matrix"], json!([[-1]]));
}

#[test]
fn input_errors_exit_with_one() {
    let bad = r#"{"rank": 1, "galois": {"generators": [{"name": "s", "matrix": [[2]]}]}, "inertia": []}"#;
    let out = neron(&["component-group"], Some(bad));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("$.galois.generators") && err.contains("not unimodular"), "{err}");
    let out = neron(&["component-group"], Some(r#"{"rank": 1, "galois": {"generators": [{"name": "s", "matrix": [[-1], [1]]}]}}"#));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("$.galois.generators[0].matrix"));
    assert_eq!(neron(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(neron(&["resolve", "--input", "/nonexistent/doc.json"], None).status.code(), Some(1));
    // Klein four over trivial inertia: Gamma/J is not cyclic.
    let klein = r#"{"rank": 2, "galois": {"generators": [{"name": "a", "matrix": [[-1, 0], [0, 1]]}, {"name": "b", "matrix": [[1, 0], [0, -1]]}]}, "inertia": [], "frobenius": "a"}"#;
    assert_eq!(neron(&["component-group"], Some(klein)).status.code(), Some(1));
}

#[test]
fn local_cohomology_options() {
    let gm = r#"{"rank": 1, "galois": {"generators": []}, "inertia": [], "frobenius": "", "options": {"degree": 2}}"#;
    let out = neron(&["local-cohomology"], Some(gm));
    assert_eq!(report(&out)["results"]["cohomology"], json!({ "divisible_rank": 1 }));
    let out = neron(&["local-cohomology", "--degree", "1"], Some(gm));
    assert_eq!(report(&out)["results"]["cohomology"], json!({ "rank": 0, "invariant_factors": [] }));
    let out = neron(&["local-cohomology", "--degree", "2", "--mode", "cd=2"], Some(gm));
    assert_eq!(out.status.code(), Some(1));
    let out = neron(&["local-cohomology", "--degree", "3", "--mode", "cd=2"], Some(gm));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn large_integers_are_strings() {
    let big = "2305843009213693952";
    let doc = format!(
        r#"{{"rank": 2, "galois": {{"generators": [{{"name": "s", "matrix": [[-1, "-{big}"], [0, 1]]}}]}}, "inertia": ["s"]}}"#
    );
    let out = neron(&["component-group", "--timing"], Some(&doc));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["input"]["galois"]["generators"][0]["matrix"][0][1], json!(format!("-{big}")));
    assert!(r["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn corpus_and_round_trip() {
    let out = neron(&["corpus"], None);
    assert_eq!(out.status.code(), Some(0));
    let entries = report(&out)["results"]["entries"].as_array().unwrap().clone();
    assert!(entries.len() >= 12);
    for e in &entries {
        let name = e["name"].as_str().unwrap();
        let single = report(&neron(&["corpus", "--name", name], None));
        assert_eq!(&single["results"]["document"], e);
        let command = if e.get("ses").is_some() {
            "six-term"
        } else if e.get("root_datum").is_some() {
            "reductive-h1"
        } else {
            "resolve"
        };
        let out = neron(&[command, "--pretty"], Some(&e.to_string()));
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(&report(&out)["input"], e, "{name}");
    }
    assert_eq!(neron(&["corpus", "--name", "no-such-entry"], None).status.code(), Some(1));
}

#[test]
fn verify_with_config_file() {
    let dir = std::env::temp_dir().join(format!("neron-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("config.toml");
    std::fs::write(&cfg, "corpus_size = 5\nwindow = [-2, 2]\nseed = 11\n").unwrap();
    let args = ["verify", "--config", cfg.to_str().unwrap()];
    let a = neron(&args, None);
    assert_eq!(a.status.code(), Some(0));
    let r = report(&a);
    assert_eq!(r["results"]["instances"]["random"], 5);
    assert_eq!(r["results"]["seed"], 11);
    assert_eq!(r["results"]["window"], json!([-2, 2]));
    assert_eq!(a.stdout, neron(&args, None).stdout);
    let out = neron(&["verify", "--config", cfg.to_str().unwrap(), "--seed", "12"], None);
    assert_eq!(report(&out)["results"]["seed"], 12);
    std::fs::write(&cfg, "window = [3, -3]\n").unwrap();
    assert_eq!(neron(&args, None).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn six_term_rejects_non_exact_input() {
    let doc = r#"{"rank": 2, "galois": {"generators": [{"name": "s", "matrix": [[0, 1], [1, 0]]}]}, "inertia": ["s"],
        "ses": {"t1": {"rank": 1, "generators": {"s": [[-1]]}}, "t2": {"rank": 2, "generators": {"s": [[0, 1], [1, 0]]}},
                "t3": {"rank": 1, "generators": {"s": [[1]]}}, "f": [[2], [2]], "g": [[1, -1]]}}"#;
    let out = neron(&["six-term"], Some(doc));
    assert_eq!(out.status.code(), Some(1));
}
