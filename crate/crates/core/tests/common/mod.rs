#![allow(dead_code)]

use serde_json::Value;

pub fn reference() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/reference_values.json");
    let text = std::fs::read_to_string(path).expect("reference fixture present");
    serde_json::from_str(&text).expect("fixture is valid JSON")
}

pub fn num(v: &Value) -> f64 {
    v.as_str().expect("numbers are stored as strings").parse().expect("parsable float")
}

/// Rows of a fixture table as vectors of floats.
pub fn rows(v: &Value, key: &str) -> Vec<Vec<f64>> {
    v[key]
        .as_array()
        .unwrap_or_else(|| panic!("missing table {key}"))
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(num).collect())
        .collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}
