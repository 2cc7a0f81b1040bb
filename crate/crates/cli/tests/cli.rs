use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            let f = fixture(a);
            if f.exists() { f.display().to_string() } else { a.to_string() }
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_quivermag"))
        .args(&args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_str(&stdout(&out))
        .unwrap_or_else(|e| panic!("{e}: {}\n{}", stdout(&out), stderr(&out)));
    (code(&out), v)
}

fn strings(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect()
}

/// Compares against `tests/golden/<name>`; set `QUIVERMAG_BLESS=1` to rewrite.
fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let actual = stdout(&out);
    if std::env::var_os("QUIVERMAG_BLESS").is_some() {
        fs::write(&path, &actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

#[test]
fn golden_outputs() {
    golden("a2_parse.json", &["--json", "parse", "a2.quiver"]);
    golden("a2_cartan.json", &["--json", "cartan", "a2.quiver"]);
    golden("bound_ext.json", &["--json", "ext", "bound.quiver"]);
    golden("bound_verify.json", &["--json", "verify", "bound.quiver"]);
    golden("kronecker_magnitude.json", &["--json", "magnitude", "kronecker.quiver"]);
    golden("cycle3_magnitude.json", &["--json", "magnitude", "cycle3.quiver"]);
    golden("ones3_matrix_magnitude.json", &["--json", "matrix-magnitude", "--matrix", "ones3.matrix"]);
    golden("bound_verify.txt", &["verify", "bound.quiver"]);
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["--json", "verify", "cycle3.quiver"][..],
        &["--json", "paths", "bound.quiver"],
        &["--json", "magnitude", "bound.quiver"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn envelope_shape() {
    let (status, v) = json(&["cartan", "a2.quiver"]);
    assert_eq!(status, 0);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "input_digest", "result", "warnings"]);
    assert_eq!(v["command"], "cartan");
    let digest = v["input_digest"].as_str().unwrap();
    assert!(digest.starts_with("sha256:") && digest.len() == 7 + 64);
    // text and JSON spellings of the same quiver are different inputs
    let (_, w) = json(&["cartan", "a2.json"]);
    assert_ne!(v["input_digest"], w["input_digest"]);
    assert_eq!(v["result"], w["result"]);
}

#[test]
fn parse_normalizes_and_round_trips() {
    let out = run(&["parse", "a2.json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let canonical: String = text.lines().take_while(|l| *l != "}").chain(["}"]).collect::<Vec<_>>().join("\n");
    let dir = tempfile::tempdir().unwrap();
    let again = dir.path().join("a2.quiver");
    fs::write(&again, format!("{canonical}\n")).unwrap();
    let second = run(&["parse", again.to_str().unwrap()]);
    assert_eq!(stdout(&second), text);
}

#[test]
fn parse_rejects_bad_vertex() {
    let out = run(&["parse", "bad_vertex.quiver"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown vertex `7`"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_input_error() {
    assert_eq!(code(&run(&["cartan", "/nonexistent/quiver"])), 2);
}

#[test]
fn cartan_examples() {
    let (_, v) = json(&["cartan", "a2.quiver"]);
    assert_eq!(strings(&v["result"]["cartan"]), [["1", "0"], ["1", "1"]]);
    assert_eq!(v["result"]["determinant"], "1");

    let (_, v) = json(&["cartan", "cycle3.quiver"]);
    assert_eq!(strings(&v["result"]["cartan"]), vec![vec!["1"; 3]; 3]);
    assert_eq!(v["result"]["determinant"], "0");

    assert_eq!(code(&run(&["cartan", "loop.quiver"])), 3);
}

#[test]
fn ext_examples() {
    let (_, v) = json(&["ext", "kronecker.quiver"]);
    assert_eq!(v["result"]["ext"][1], serde_json::json!([[0, 2], [0, 0]]));
    assert_eq!(v["result"]["global_dimension"], serde_json::json!({"kind": "finite", "value": 1}));

    let (_, v) = json(&["ext", "bound.quiver"]);
    assert_eq!(v["result"]["global_dimension"]["value"], 2);
    assert_eq!(v["result"]["ext"][2][0][2], 1);

    let (_, v) = json(&["ext", "points.quiver"]);
    assert_eq!(v["result"]["global_dimension"]["value"], 0);

    let (status, v) = json(&["--max-degree", "3", "ext", "cycle3.quiver"]);
    assert_eq!(status, 0);
    assert_eq!(v["result"]["global_dimension"], serde_json::json!({"kind": "at_least", "value": 3}));
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);

    assert_eq!(code(&run(&["ext", "loop.quiver"])), 3);
}

#[test]
fn magnitude_examples() {
    let (_, v) = json(&["magnitude", "a2.quiver"]);
    assert_eq!(v["result"]["magnitude"]["value"], "1");
    let (_, v) = json(&["magnitude", "kronecker.quiver"]);
    assert_eq!(v["result"]["magnitude"]["value"], "0");
    assert_eq!(v["result"]["euler_characteristic"], 0);
    let (_, v) = json(&["magnitude", "cycle3.quiver"]);
    assert_eq!(v["result"]["magnitude"]["status"], "weighted");
    assert_eq!(v["result"]["magnitude"]["value"], "1");
    assert_eq!(v["result"]["magnitude"]["evidence"]["kind"], "weighting");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&run(&["verify", "a2.quiver"])), 0);
    assert_eq!(code(&run(&["verify", "kronecker.quiver"])), 0);
    assert_eq!(code(&run(&["verify", "bound.quiver"])), 0);
    assert_eq!(code(&run(&["verify", "loop.quiver"])), 3);
    assert_eq!(code(&run(&["verify", "bad_vertex.quiver"])), 2);
    assert_eq!(code(&run(&["verify", "cycle3.quiver"])), 4);
    // a large enough bound does not make the periodic resolution finite
    assert_eq!(code(&run(&["--max-degree", "20", "verify", "cycle3.quiver"])), 4);
}

#[test]
fn verify_rejects_tampered_cartan_matrix() {
    let (status, v) = json(&["verify", "bound.quiver", "--matrix", "bound_tampered.matrix"]);
    assert_eq!(status, 1);
    assert_eq!(v["result"]["status"], "failed");
    let inverse = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "cartan_inverse_is_euler_matrix")
        .unwrap();
    assert_eq!(inverse["outcome"], "failed");

    // the true Cartan matrix supplied by hand passes
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.matrix");
    fs::write(&z, "1 0 0\n1 1 0\n0 1 1\n").unwrap();
    assert_eq!(code(&run(&["verify", "bound.quiver", "--cartan", z.to_str().unwrap()])), 0);

    assert_eq!(code(&run(&["verify", "bound.quiver", "--matrix", "a2.matrix"])), 2);
    assert_eq!(code(&run(&["verify", "bound.quiver", "--matrix", "ragged.matrix"])), 2);
}

#[test]
fn paths_examples() {
    let (_, v) = json(&["paths", "a2.quiver", "--from", "1", "--to", "2"]);
    assert_eq!(v["result"]["pairs"][0]["paths"], serde_json::json!(["a"]));

    let (_, v) = json(&["paths", "bound.quiver", "--from", "1", "--to", "3"]);
    assert_eq!(v["result"]["pairs"][0]["paths"], serde_json::json!([]));
    assert_eq!(v["result"]["total"], 0);

    // counts match the Cartan matrix: Z[i][j] counts paths j -> i
    let (_, z) = json(&["cartan", "kronecker.quiver"]);
    let (_, v) = json(&["paths", "kronecker.quiver", "--from", "1", "--to", "2", "--count-only"]);
    assert_eq!(v["result"]["pairs"][0]["count"], 2);
    assert_eq!(z["result"]["cartan"][1][0], "2");
    assert!(v["result"]["pairs"][0].get("paths").is_none());

    let (_, v) = json(&["paths", "cycle3.quiver"]);
    assert_eq!(v["result"]["total"], 9);

    assert_eq!(code(&run(&["paths", "a2.quiver", "--from", "9"])), 2);
}

#[test]
fn matrix_magnitude_examples() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.matrix");
    fs::write(&id, "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n").unwrap();
    let (_, v) = json(&["matrix-magnitude", "--matrix", id.to_str().unwrap()]);
    assert_eq!(v["result"]["magnitude"]["value"], "4");

    let (_, v) = json(&["matrix-magnitude", "--matrix", "a2.matrix"]);
    assert_eq!(v["result"]["magnitude"]["value"], "1");

    let (_, v) = json(&["matrix-magnitude", "--matrix", "ones3.matrix"]);
    assert_eq!(v["result"]["magnitude"]["status"], "weighted");
    assert_eq!(v["result"]["magnitude"]["value"], "1");

    let (_, v) = json(&["matrix-magnitude", "--matrix", "diag.matrix"]);
    assert_eq!(v["result"]["magnitude"]["value"], "5");
    assert_eq!(v["result"]["determinant"], "1/6");

    let (status, v) = json(&["matrix-magnitude", "--matrix", "singular.matrix"]);
    assert_eq!(status, 0);
    assert_eq!(v["result"]["magnitude"]["status"], "undefined");
    assert!(v["result"]["magnitude"]["value"].is_null());
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);

    assert_eq!(code(&run(&["matrix-magnitude", "--matrix", "ragged.matrix"])), 2);
    assert_eq!(code(&run(&["matrix-magnitude", "--matrix", "wide.matrix"])), 2);
    fs::write(&id, "1 x\n0 1\n").unwrap();
    assert_eq!(code(&run(&["matrix-magnitude", "--matrix", id.to_str().unwrap()])), 2);
    fs::write(&id, "1/0\n").unwrap();
    assert_eq!(code(&run(&["matrix-magnitude", "--matrix", id.to_str().unwrap()])), 2);
}

#[test]
fn text_mode_reports_warnings_on_stderr() {
    let out = run(&["verify", "cycle3.quiver"]);
    assert!(stdout(&out).contains("magnitude = 1"));
    assert!(stderr(&out).contains("warning: global dimension not reached"));
}
