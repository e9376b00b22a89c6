use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn koszul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszul")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_structure(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("structure.json");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

const ABELIAN3: &str = r#"{"generators":[{"name":"a","degree":0},{"name":"b","degree":0},{"name":"c","degree":0}]}"#;

#[test]
fn verify_passes_and_is_byte_identical() {
    let args = ["verify", "bar", "--space", "v2d", "--weight", "3", "--seed", "5"];
    let (a, b) = (koszul(&args), koszul(&args));
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["suite"], "bar");
    assert_eq!(r["seed"], 5);
    assert!(r["identities"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn out_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = koszul(&["pbw", "--space", "heisenberg", "--weight", "3", "--out", p.to_str().unwrap()]);
        assert!(out.stdout.is_empty());
        assert!(stderr(&out).contains("FAIL"));
    }
    assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
}

#[test]
fn seed_changes_only_the_random_layer() {
    let run = |seed| json(&koszul(&["verify", "cobar", "--space", "v2", "--weight", "2", "--seed", seed]));
    let (a, b) = (run("1"), run("2"));
    assert_eq!(a["seed"], 1);
    assert_eq!(b["seed"], 2);
    let random = |r: &Value| {
        r["identities"].as_array().unwrap().iter().find(|c| c["truncation"].as_str().unwrap().contains("seed")).cloned().unwrap()
    };
    assert!(random(&a)["truncation"].as_str().unwrap().ends_with("seed 1"));
    assert!(random(&b)["truncation"].as_str().unwrap().ends_with("seed 2"));
}

#[test]
fn text_format_lists_identities() {
    let out = koszul(&["verify", "appendix", "--space", "qx", "--weight", "2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite appendix (seed 0): pass"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("ok  ") || l.starts_with("finding ") || l.starts_with("note: ") || l.starts_with("       ")));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let decimal = write_structure(
        &dir,
        r#"{"generators":[{"name":"x","degree":0}],
            "brackets":[{"arity":2,"inputs":["x","x"],"output":[{"coeff":"1.5","monomial":["x"]}]}]}"#,
    );
    let out = koszul(&["verify", "bar", "--space", &decimal]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("brackets[0].output[0].coeff"), "{}", stderr(&out));

    let truncated = write_structure(&dir, r#"{"generators":[{"name":"x","#);
    let out = koszul(&["verify", "bar", "--space", &truncated]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));

    let out = koszul(&["verify", "bar", "--space", "no-such-fixture"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sl2"));

    assert_eq!(koszul(&["verify", "bar", "--weight", "0"]).status.code(), Some(2));
    let out = koszul(&["gm", "--space", "l3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("dg Lie"));
}

#[test]
fn pbw_on_sl2_reports_the_scale_that_works() {
    let out = koszul(&["pbw", "--space", "sl2", "--weight", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["iso"]["status"], "fail");
    assert_eq!(r["iso"]["holds_at"], serde_json::json!(["1"]));
    assert!(r["structure"]["identities"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn pbw_on_l3_has_higher_products() {
    let out = koszul(&["pbw", "--space", "l3", "--weight", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["iso"]["status"], "skipped");
    assert_eq!(r["iso"]["reason"], "not dg Lie");
    assert!(r["structure"]["products"].as_array().unwrap().iter().any(|p| p["arity"] == 3));
}

#[test]
fn abelian_pbw_is_the_symmetric_product() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_structure(&dir, ABELIAN3);
    let out = koszul(&["pbw", "--space", &path, "--weight", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["iso"]["status"], "pass");
    let products = r["structure"]["products"].as_array().unwrap();
    assert!(products.iter().all(|p| p["arity"] == 2));
    let output = |x: &str, y: &str| {
        products.iter().find(|p| p["inputs"] == serde_json::json!([x, y])).map(|p| p["output"].clone()).unwrap()
    };
    for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
        assert_eq!(output(x, y), output(y, x));
        assert_ne!(output(x, y), serde_json::json!([]));
    }
}

#[test]
fn gm_on_an_abelian_algebra_is_maurer_cartan() {
    let out = koszul(&["gm", "--space", "v2", "--weight", "2", "--u-trunc", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["maurer_cartan"], "residual zero");
    assert_eq!(r["u_trunc"], 1);
}

#[test]
fn gm_without_u_matches_the_envelope_cochain() {
    let gm = json(&koszul(&["gm", "--space", "heisenberg", "--weight", "2", "--u-trunc", "0"]));
    let pbw = json(&koszul(&["pbw", "--space", "heisenberg", "--weight", "2"]));
    assert!(!gm["cochain"].as_array().unwrap().is_empty());
    assert_eq!(gm["cochain"], pbw["cochain"]);
}

#[test]
fn verify_all_handles_degenerate_inputs() {
    let out = koszul(&["verify", "all", "--space", "zero", "--weight", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = koszul(&["verify", "all", "--space", "l3", "--weight", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let notes = json(&out)["notes"].clone();
    assert!(notes.as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("not dg Lie")), "{notes}");
}
