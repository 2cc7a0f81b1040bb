use quivermag_wasm::{analyze_json, matrix_magnitude_json, paths_json};
use serde_json::Value;

const BOUND: &str = "quiver { vertices: 1 2 3; arrows: a: 1 -> 2; b: 2 -> 3; relations: b*a; }";

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyze_bound_example() {
    let v = parse(analyze_json(BOUND, None).unwrap());
    assert_eq!(v["report"]["status"], "passed");
    assert_eq!(v["report"]["magnitude"]["value"], "2");
    assert_eq!(v["basis"], serde_json::json!(["e_1", "a", "e_2", "b", "e_3"]));
}

#[test]
fn analyze_reports_errors_as_text() {
    let err = analyze_json("quiver { vertices: 1; arrows: x: 1 -> 1; }", None).unwrap_err();
    assert!(err.contains("infinite-dimensional"), "{err}");
    assert!(analyze_json("quiver {", None).is_err());
}

#[test]
fn paths_between_vertices() {
    let v = parse(paths_json(BOUND, "1", "2").unwrap());
    assert_eq!(v["paths"], serde_json::json!(["a"]));
    let v = parse(paths_json(BOUND, "1", "3").unwrap());
    assert_eq!(v["paths"], serde_json::json!([]));
    assert!(paths_json(BOUND, "1", "9").is_err());
}

#[test]
fn matrix_magnitude_of_all_ones() {
    let v = parse(matrix_magnitude_json("1 1\n1 1\n").unwrap());
    assert_eq!(v["status"], "weighted");
    assert_eq!(v["value"], "1");
    assert!(matrix_magnitude_json("1 2\n3\n").is_err());
}
