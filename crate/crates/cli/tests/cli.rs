use serde_json::Value;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ordercert");

const GOLDEN_PHI: &str = "s^3 + (2*m^2 + 2*m^-2 - 3)*s^2 + \
    (m^4 + m^-4 - 3*m^2 - 3*m^-2 + 6)*s + 2*m^2 + 2*m^-2 - 3";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn ordercert")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(BIN)
        .args(args)
        .env(key, val)
        .output()
        .expect("spawn ordercert")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_of(&run(args))).expect("valid JSON on stdout")
}

fn expect_invalid(out: &Output) {
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "stderr was {err:?}");
}

fn shipped_schema(name: &str) -> Value {
    let path = format!("{}/../../schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file"))
        .expect("schema parses")
}

#[test]
fn phi_reports_the_golden_five_two_polynomial() {
    let doc = json_of(&["phi", "7/4"]);
    assert_eq!(doc["payload"]["phi"], GOLDEN_PHI);
    assert_eq!(
        doc["payload"]["cos_form"],
        "s^3 + (2*u^2 - 7)*s^2 + (u^4 - 7*u^2 + 14)*s + 2*u^2 - 7"
    );
    assert_eq!(doc["payload"]["s_degree"], 3);
    let props = doc["payload"]["properties"].as_object().unwrap();
    assert_eq!(props.len(), 4);
    assert!(props.values().all(|v| v == &Value::Bool(true)));
    assert_eq!(doc["knot"]["original"], "7/4");
    assert_eq!(doc["knot"]["normalized"], "7/3");
    assert_eq!(doc["knot"]["mirrored"], true);
}

#[test]
fn phi_of_the_trefoil_is_linear() {
    let doc = json_of(&["phi", "3/1"]);
    assert_eq!(doc["payload"]["phi"], "s + m^2 + m^-2 - 1");
    assert_eq!(doc["payload"]["s_degree"], 1);
}

#[test]
fn envelope_version_matches_the_package() {
    let doc = json_of(&["phi", "3/1"]);
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["warnings"], Value::Array(vec![]));
}

#[test]
fn invalid_inputs_exit_two() {
    expect_invalid(&run(&["phi", "4/2"]));
    expect_invalid(&run(&["phi", "5"]));
    expect_invalid(&run(&["phi", "5/0"]));
    expect_invalid(&run(&["certify", "3/1", "1"]));
    expect_invalid(&run(&["scan", "3/1", "--n-max", "1"]));
    expect_invalid(&run(&["scan", "3/1", "--n-max", "10001"]));
    expect_invalid(&run(&["batch", "--pmod4", "2", "--p-max", "9", "--n-max", "4"]));
    expect_invalid(&run(&["curve", "3/1", "--from", "0", "--to", "1", "--steps", "5"]));
    expect_invalid(&run(&["curve", "3/1", "--from", "0.5", "--to", "1", "--steps", "1"]));
    expect_invalid(&run_env(&["certify", "7/4", "9"], "ORDERCERT_TOL", "bogus"));
    expect_invalid(&run_env(&["certify", "7/4", "9"], "ORDERCERT_TOL", "-3"));
    expect_invalid(&run_env(&["certify", "7/4", "9"], "ORDERCERT_TOL", "inf"));
}

#[test]
fn scan_reports_the_five_two_onset() {
    let doc = json_of(&["scan", "7/4", "--n-max", "12"]);
    assert_eq!(doc["payload"]["n0"], 9);
    let verdicts = doc["payload"]["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 11);
    for v in verdicts {
        let n = v["n"].as_i64().unwrap();
        let certified = v["verdict"] != "inconclusive";
        assert_eq!(certified, n >= 9, "level {n}");
    }
}

#[test]
fn batch_enumerates_normalized_pairs_in_order() {
    let text = stdout_of(&run(&["batch", "--p-max", "7", "--n-max", "10"]));
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let pairs: Vec<(i64, i64)> = lines
        .iter()
        .map(|d| (d["p"].as_i64().unwrap(), d["q"].as_i64().unwrap()))
        .collect();
    assert_eq!(pairs, [(3, 1), (5, 1), (5, 3), (7, 1), (7, 3), (7, 5)]);
    let schema = shipped_schema("batch-line.schema.json");
    for line in &lines {
        minischema::validate(&schema, line).unwrap();
    }
}

#[test]
fn batch_with_an_empty_filter_prints_nothing() {
    let out = run(&["batch", "--pmod4", "1", "--p-max", "3", "--n-max", "4"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn tolerance_env_var_gates_certificates() {
    let strict = stdout_of(&run_env(&["certify", "7/4", "9"], "ORDERCERT_TOL", " 1e-9 "));
    let default = stdout_of(&run(&["certify", "7/4", "9"]));
    assert_eq!(strict, default);
    let loose: Value =
        serde_json::from_str(&stdout_of(&run_env(&["certify", "7/4", "9"], "ORDERCERT_TOL", "1e-3")))
            .unwrap();
    assert_eq!(loose["payload"]["verdict"], "certified_left_orderable");
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["scan", "7/4", "--n-max", "15"],
        vec!["batch", "--p-max", "9", "--n-max", "10"],
        vec!["certify", "7/4", "9"],
    ] {
        let a = stdout_of(&run(&args));
        let b = stdout_of(&run(&args));
        assert_eq!(a, b, "rerun of {args:?} differed");
    }
}

#[test]
fn curve_matches_the_trefoil_closed_form_pointwise() {
    let text = stdout_of(&run(&[
        "curve", "3/1", "--from", "0.2", "--to", "1.4", "--steps", "25",
    ]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,root_1"));
    let mut rows = 0;
    for line in lines {
        let (theta, root): (f64, f64) = {
            let mut it = line.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        };
        let closed = 3.0 - 4.0 * theta.cos().powi(2);
        assert!((root - closed).abs() <= 1e-9, "theta {theta}");
        rows += 1;
    }
    assert_eq!(rows, 25);
}

#[test]
fn curve_pads_missing_roots_with_empty_cells() {
    let text = stdout_of(&run(&[
        "curve", "7/3", "--from", "0.2", "--to", "1.5", "--steps", "14",
    ]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,root_1,root_2,root_3"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.ends_with(",,")));
    assert!(rows.iter().any(|r| !r.ends_with(",") && r.matches(',').count() == 3));
    for row in rows {
        assert_eq!(row.matches(',').count(), 3);
    }
}

#[test]
fn presentation_prints_the_documented_grammar() {
    let full = stdout_of(&run(&["presentation", "3/1", "2"]));
    assert_eq!(
        full,
        "generators: g0 g1 g2\n\
         relator 0: g1 g0^-1 g2^-1 g0^-1\n\
         relator 1: g2 g0 g2 g1^-1 g1^-1\n\
         meridian: g2\n"
    );
    let branched = stdout_of(&run(&["presentation", "3/1", "2", "--branched"]));
    assert_eq!(
        branched,
        "generators: g0 g1\n\
         relator 0: g1 g0^-1 g0^-1\n\
         relator 1: g0 g1^-1 g1^-1\n"
    );
    assert!(!branched.contains("meridian"));
}

#[test]
fn homology_reports_exact_orders() {
    let five_two = json_of(&["homology", "7/4", "3"]);
    let payload = &five_two["payload"];
    assert_eq!(payload["snf_diagonal"], serde_json::json!(["1", "5", "5"]));
    assert_eq!(payload["betti"], 0);
    assert_eq!(payload["torsion_order"], "25");
    assert_eq!(payload["fox_order"], "25");
    assert_eq!(payload["agreement"], true);

    let trefoil = json_of(&["homology", "3/1", "6"]);
    let payload = &trefoil["payload"];
    assert_eq!(payload["betti"], 2);
    assert_eq!(payload["torsion_order"], "infinite");
    assert_eq!(payload["fox_order"], "infinite");
    assert_eq!(payload["agreement"], true);
}

#[test]
fn json_outputs_validate_against_the_shipped_schemas() {
    let cases: &[(&[&str], &str)] = &[
        (&["phi", "7/4"], "phi.schema.json"),
        (&["phi", "3/1"], "phi.schema.json"),
        (&["certify", "7/4", "9"], "certify.schema.json"),
        (&["certify", "3/1", "6"], "certify.schema.json"),
        (&["certify", "5/3", "4"], "certify.schema.json"),
        (&["certify", "3/1", "2"], "certify.schema.json"),
        (&["scan", "7/4", "--n-max", "12"], "scan.schema.json"),
        (&["scan", "5/3", "--n-max", "6"], "scan.schema.json"),
        (&["homology", "7/4", "3"], "homology.schema.json"),
        (&["homology", "3/1", "6"], "homology.schema.json"),
    ];
    for (args, schema_name) in cases {
        let schema = shipped_schema(schema_name);
        let doc = json_of(args);
        minischema::validate(&schema, &doc)
            .unwrap_or_else(|e| panic!("{args:?} violates {schema_name}: {e}"));
    }
}

#[test]
fn schema_validator_rejects_shape_drift() {
    let schema = shipped_schema("phi.schema.json");
    let good = json_of(&["phi", "7/4"]);

    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("version");
    assert!(minischema::validate(&schema, &missing).is_err());

    let mut wrong_type = good.clone();
    wrong_type["payload"]["s_degree"] = Value::String("3".into());
    assert!(minischema::validate(&schema, &wrong_type).is_err());

    let mut extra = good.clone();
    extra
        .as_object_mut()
        .unwrap()
        .insert("extra".into(), Value::Null);
    assert!(minischema::validate(&schema, &extra).is_err());

    let certify = shipped_schema("certify.schema.json");
    let mut orphan = json_of(&["certify", "7/4", "9"]);
    orphan["payload"]
        .as_object_mut()
        .unwrap()
        .remove("certificate");
    assert!(minischema::validate(&certify, &orphan).is_err());

    let batch = shipped_schema("batch-line.schema.json");
    let line: Value = serde_json::json!({"p": 3, "q": 1, "n_max": 10, "n0": null});
    assert!(minischema::validate(&batch, &line).is_ok());
    let fractional: Value = serde_json::json!({"p": 3, "q": 1, "n_max": 10, "n0": 3.5});
    assert!(minischema::validate(&batch, &fractional).is_err());
}

#[test]
fn broken_pipes_exit_cleanly() {
    let script = format!("'{BIN}' batch --p-max 19 --n-max 12 | head -n 1");
    let out = Command::new("sh").args(["-c", &script]).output().unwrap();
    assert!(out.status.success(), "pipeline failed");
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1);
}

/// Just enough of JSON Schema to check the shipped files: type, enum,
/// properties/required/additionalProperties, items with bounds, oneOf, and
/// local `#/$defs` references.
mod minischema {
    use serde_json::Value;

    pub fn validate(schema: &Value, doc: &Value) -> Result<(), String> {
        check(schema, schema, doc, "$")
    }

    fn check(schema: &Value, root: &Value, v: &Value, path: &str) -> Result<(), String> {
        if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
            let target = resolve(root, r).ok_or_else(|| format!("unresolvable $ref {r}"))?;
            return check(target, root, v, path);
        }
        if let Some(branches) = schema.get("oneOf").and_then(Value::as_array) {
            let hits = branches
                .iter()
                .filter(|b| check(b, root, v, path).is_ok())
                .count();
            if hits != 1 {
                return Err(format!("{path}: {hits} oneOf branches matched"));
            }
        }
        if let Some(t) = schema.get("type") {
            let allowed: Vec<&str> = match t {
                Value::String(s) => vec![s.as_str()],
                Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
                _ => return Err(format!("{path}: malformed type keyword")),
            };
            if !allowed.iter().any(|t| type_ok(t, v)) {
                return Err(format!("{path}: expected {allowed:?}"));
            }
        }
        if let Some(options) = schema.get("enum").and_then(Value::as_array) {
            if !options.contains(v) {
                return Err(format!("{path}: {v} not in enum"));
            }
        }
        if let Some(obj) = v.as_object() {
            if let Some(required) = schema.get("required").and_then(Value::as_array) {
                for key in required.iter().filter_map(Value::as_str) {
                    if !obj.contains_key(key) {
                        return Err(format!("{path}: missing {key}"));
                    }
                }
            }
            let props = schema.get("properties").and_then(Value::as_object);
            if let Some(props) = props {
                for (key, sub) in props {
                    if let Some(val) = obj.get(key) {
                        check(sub, root, val, &format!("{path}.{key}"))?;
                    }
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.is_some_and(|p| p.contains_key(key)) {
                        return Err(format!("{path}: unexpected key {key}"));
                    }
                }
            }
        }
        if let Some(arr) = v.as_array() {
            if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
                if (arr.len() as u64) < min {
                    return Err(format!("{path}: fewer than {min} items"));
                }
            }
            if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
                if (arr.len() as u64) > max {
                    return Err(format!("{path}: more than {max} items"));
                }
            }
            if let Some(items) = schema.get("items") {
                for (i, item) in arr.iter().enumerate() {
                    check(items, root, item, &format!("{path}[{i}]"))?;
                }
            }
        }
        Ok(())
    }

    fn type_ok(t: &str, v: &Value) -> bool {
        match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            "number" => v.is_number(),
            "integer" => v.as_i64().is_some() || v.as_u64().is_some(),
            _ => false,
        }
    }

    fn resolve<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
        reference
            .strip_prefix("#/")?
            .split('/')
            .try_fold(root, |acc, key| acc.get(key))
    }
}
