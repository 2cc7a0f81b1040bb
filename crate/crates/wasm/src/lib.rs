//! Browser bindings. Each export takes text input and returns a JSON string;
//! errors surface as thrown strings.

use quivermag::{enumerate_paths, magnitude, parse_any, verify, Matrix};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Verification report for a quiver, plus its path basis.
pub fn analyze_json(quiver: &str, max_degree: Option<usize>) -> Result<String, String> {
    let bq = parse_any(quiver).map_err(|e| e.to_string())?;
    let pb = enumerate_paths(bq.clone()).map_err(|e| e.to_string())?;
    let report = verify(bq, max_degree).map_err(|e| e.to_string())?;
    let q = pb.bound_quiver().quiver();
    let basis: Vec<String> = pb.paths().iter().map(|p| p.display(q)).collect();
    Ok(json!({ "report": report, "basis": basis }).to_string())
}

/// Basis paths from `from` to `to` (vertex identifiers).
pub fn paths_json(quiver: &str, from: &str, to: &str) -> Result<String, String> {
    let bq = parse_any(quiver).map_err(|e| e.to_string())?;
    let pb = enumerate_paths(bq).map_err(|e| e.to_string())?;
    let q = pb.bound_quiver().quiver();
    let vertex = |id: &str| q.vertex_index(id).ok_or_else(|| format!("unknown vertex `{id}`"));
    let listed: Vec<String> = pb.between(vertex(from)?, vertex(to)?).map(|p| p.display(q)).collect();
    Ok(json!({ "from": from, "to": to, "paths": listed }).to_string())
}

/// Magnitude of a square matrix given one row per line.
pub fn matrix_magnitude_json(matrix: &str) -> Result<String, String> {
    let z: Matrix = matrix.parse().map_err(|e: quivermag::LinalgError| e.to_string())?;
    let m = magnitude(&z).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&m).expect("serializes"))
}

#[wasm_bindgen]
pub fn analyze(quiver: &str, max_degree: Option<u32>) -> Result<String, JsValue> {
    analyze_json(quiver, max_degree.map(|d| d as usize)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn paths(quiver: &str, from: &str, to: &str) -> Result<String, JsValue> {
    paths_json(quiver, from, to).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn matrix_magnitude(matrix: &str) -> Result<String, JsValue> {
    matrix_magnitude_json(matrix).map_err(|e| JsValue::from_str(&e))
}
