use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-recover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("torus-recover-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Minimal checker for the subset of JSON Schema used by the report schema.
fn conforms(v: &Value, schema: &Value) -> Result<(), String> {
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        return options.contains(v).then_some(()).ok_or(format!("{v} not in {options:?}"));
    }
    if let Some(ty) = schema.get("type") {
        let types: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            "number" => v.is_number(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            _ => false,
        });
        if !ok {
            return Err(format!("{v} is not {types:?}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            return Err(format!("{x} < {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            let key = key.as_str().unwrap();
            if !obj.contains_key(key) {
                return Err(format!("missing {key}"));
            }
        }
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => conforms(value, sub).map_err(|e| format!("{key}: {e}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("unexpected {key}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            conforms(x, items).map_err(|e| format!("[{i}]: {e}"))?;
        }
    }
    Ok(())
}

#[test]
fn prony_roundtrip_passes() {
    let out = bin(&["roundtrip", "--mode", "masses1d", "--n", "4", "--trials", "10", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], 10);
}

#[test]
fn every_mode_exits_zero() {
    for mode in ["intervals-extended", "intervals-minimal", "max-k", "peeling", "search"] {
        let out = bin(&["roundtrip", "--mode", mode, "--n", "3", "--k", "2", "--trials", "5", "--seed", "9"]);
        assert_eq!(out.status.code(), Some(0), "{mode}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn reports_are_byte_identical() {
    for format in ["json", "csv"] {
        let args = ["roundtrip", "--mode", "peeling", "--n", "4", "--trials", "8", "--seed", "21", "--format", format];
        assert_eq!(bin(&args).stdout, bin(&args).stdout);
    }
    let gen = ["gen", "--kind", "masses1d", "--n", "3", "--seed", "7"];
    assert_eq!(bin(&gen).stdout, bin(&gen).stdout);
}

#[test]
fn zero_match_tolerance_fails() {
    let out = bin(&["roundtrip", "--n", "4", "--trials", "10", "--tol-match", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).any(|l| l.contains(",error,") || l.contains(",fail,")));
}

#[test]
fn usage_errors_exit_two() {
    let out = bin(&["gen", "--kind", "intervals", "--n", "2", "--separation", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));
    assert_eq!(bin(&["roundtrip", "--tol-root", "-1"]).status.code(), Some(2));
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(2));
    let missing = bin(&["recover-masses1d", "--n", "2", "--in", "/nonexistent/table.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn report_matches_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../report.schema.json")).unwrap();
    for args in [
        vec!["roundtrip", "--n", "3", "--trials", "4"],
        vec!["roundtrip", "--n", "3", "--trials", "4", "--tol-match", "0", "--timing"],
        vec!["roundtrip", "--mode", "max-k", "--n", "3", "--k", "1", "--trials", "3"],
    ] {
        let out = bin(&args);
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        conforms(&report, &schema).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
    let csv = bin(&["roundtrip", "--n", "2", "--trials", "2", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("trial,instance_id,status,distance,residual,wall_time_s"));
}

#[test]
fn pipeline_through_files() {
    let inst = scratch("mu2.json");
    let table = scratch("table2.json");
    let back = scratch("back2.json");
    let p = |x: &PathBuf| x.to_str().unwrap().to_owned();
    let ok = |o: Output| assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    ok(bin(&["gen", "--kind", "masses2d", "--n", "3", "--seed", "4", "--separation", "0.05", "--out", &p(&inst)]));
    ok(bin(&["transform", "--kind", "masses2d", "--n", "3", "--in", &p(&inst), "--out", &p(&table)]));
    ok(bin(&["recover-2d", "--n", "3", "--in", &p(&table), "--out", &p(&back)]));
    let a: torus_recovery::torus::Measure2D = serde_json::from_str(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    let b: torus_recovery::torus::Measure2D = serde_json::from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    assert!(a.distance(&b) < 1e-6);
}

#[test]
fn counterexample_and_probe() {
    let out = bin(&["counterexample", "--n", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["max_gap_below_2N"].as_f64().unwrap() < 1e-12);
    assert!(v["gap_at_2N"].as_f64().unwrap() > 1e-6);
    assert_eq!(v["arrangement"]["labels"].as_array().unwrap().len(), 12);

    let out = bin(&["probe", "--n", "2", "--omega", "triangle", "--trials", "20"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "interpolating");

    let omega = bin(&["omega", "--omega", "sufficient", "--n", "4"]);
    let v: Value = serde_json::from_slice(&omega.stdout).unwrap();
    assert_eq!(v["freqs"].as_array().unwrap().len(), 113);
    assert_eq!(v["N"], 4);
}
