use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn divsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divsum")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn manifest_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(manifest_path("tests/golden").join(name)).unwrap()
}

#[test]
fn headline_values_are_byte_exact() {
    let out = divsum(&["sum", "natural", "-k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-1/12\n");
    let out = divsum(&["sum", "alternating", "-k", "1"]);
    assert_eq!(stdout(&out), "1/4\n");
}

#[test]
fn diagnostics_go_to_stderr() {
    let out = divsum(&["sum", "gf", "--num", "0,1", "--den", "1,1", "-k", "2"]);
    assert_eq!(stdout(&out), "0\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("method: distributional"), "{err}");
}

#[test]
fn decimal_output_keeps_the_exact_value() {
    let out = divsum(&["--output", "decimal", "sum", "natural", "-k", "1"]);
    assert_eq!(stdout(&out), "-8.3333333333333329e-2 (exact -1/12)\n");
}

#[test]
fn json_output_matches_golden_files() {
    let cases: [(&[&str], &str); 4] = [
        (&["--output", "json", "sum", "natural", "-k", "1"], "sum_natural_k1.json"),
        (&["--output", "json", "sum", "alternating", "-k", "3"], "sum_alternating_k3.json"),
        (&["--output", "json", "sum", "gf", "--num", "0,1", "--den", "2,1,-1", "-k", "3"], "sum_gf_k3.json"),
        (&["--output", "json", "sum", "apostol", "-k", "2", "--eps", "3/5+4/5i"], "sum_apostol_k2.json"),
    ];
    for (args, file) in cases {
        let out = divsum(args);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&out), golden(file), "{file}");
    }
}

#[test]
fn tables_match_golden_files() {
    assert_eq!(stdout(&divsum(&["table", "bernoulli", "-n", "10"])), golden("table_bernoulli_10.txt"));
    assert_eq!(stdout(&divsum(&["table", "apostol", "-n", "4", "--eps=-1"])), golden("table_apostol_4.txt"));
}

/// Checks `value` against the subset of JSON Schema used by `docs/schema.json`.
fn conforms(value: &Value, schema: &Value, root: &Value) -> bool {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return conforms(value, &root["$defs"][name], root);
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        return options.contains(value);
    }
    let types: Vec<&str> = match schema.get("type") {
        Some(Value::String(t)) => vec![t.as_str()],
        Some(Value::Array(ts)) => ts.iter().filter_map(Value::as_str).collect(),
        _ => vec![],
    };
    let type_ok = types.is_empty()
        || types.iter().any(|t| match *t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.is_u64() || value.is_i64(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
    if !type_ok {
        return false;
    }
    if let (Some(obj), Some(props)) = (value.as_object(), schema.get("properties").and_then(Value::as_object)) {
        let required = schema.get("required").and_then(Value::as_array).cloned().unwrap_or_default();
        if required.iter().filter_map(Value::as_str).any(|k| !obj.contains_key(k)) {
            return false;
        }
        if obj.keys().any(|k| !props.contains_key(k)) {
            return false;
        }
        return obj.iter().all(|(k, v)| conforms(v, &props[k], root));
    }
    if let (Some(items), Some(item_schema)) = (value.as_array(), schema.get("items")) {
        let len_ok = schema.get("minItems").and_then(Value::as_u64).is_none_or(|n| items.len() as u64 >= n)
            && schema.get("maxItems").and_then(Value::as_u64).is_none_or(|n| items.len() as u64 <= n);
        return len_ok && items.iter().all(|v| conforms(v, item_schema, root));
    }
    true
}

#[test]
fn json_output_conforms_to_the_schema() {
    let text = std::fs::read_to_string(manifest_path("../../docs/schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    for file in ["sum_natural_k1.json", "sum_alternating_k3.json", "sum_gf_k3.json", "sum_apostol_k2.json"] {
        let value: Value = serde_json::from_str(&golden(file)).unwrap();
        assert!(conforms(&value, &schema, &schema), "{file}");
    }
    // The checker itself rejects malformed output.
    let bad: Value = serde_json::json!({ "value": { "exact": "1", "float": [1.0] } });
    assert!(!conforms(&bad, &schema, &schema));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 9] = [
        (&["sum", "alternating", "-k", "2"], 0),
        (&["verify", "homothetic", "-k", "5"], 0),
        (&["sum", "alternating", "-k", "0"], 2),
        (&["sum", "bogus"], 2),
        (&["sum", "gf", "--num", "1,1", "--den", "1,1", "-k", "1"], 2),
        (&["sum", "gf", "--num", "0,1", "--den", "1,-2", "-k", "1"], 3),
        (&["sum", "gf", "--num", "0,1", "--den", "1,0,1", "-k", "1"], 3),
        (&["sum", "gf", "--num", "0,1", "--den", "1,2,1", "-k", "1"], 3),
        (&["verify", "mollifier", "--num", "0,1", "--den", "1,1", "-k", "2", "--m", "8,16", "--tol", "1e-30"], 4),
    ];
    for (args, code) in cases {
        let out = divsum(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn multi_pole_override_is_flagged_experimental() {
    let args = ["sum", "gf", "--num", "0,1", "--den", "1,0,1", "-k", "1", "--allow-multi-pole"];
    let out = divsum(&args);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("experimental"), "{err}");
}
