//! Versioned JSON views of the engine's objects. Every top-level payload
//! carries `"schema": "renorm/1"`; term lists follow the canonical order
//! of the underlying maps, so output is deterministic.

use renorm_core::algebra::{Expr, Tensor2, Tensor3};
use renorm_core::hopf::TraceStep;
use renorm_core::toymodel::{EpsSeries, ScaledSum};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "renorm/1";

pub fn expr_terms(e: &Expr) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(m, q)| {
            json!({
                "coefficient": q.to_string(),
                "monomial": m.to_string(),
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn expr_payload(op: &str, input: &str, e: &Expr) -> Value {
    json!({
        "schema": SCHEMA,
        "op": op,
        "input": input,
        "terms": expr_terms(e),
        "rendered": e.to_string(),
    })
}

pub fn tensor2_terms(t: &Tensor2) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|((l, r), q)| {
            json!({
                "coefficient": q.to_string(),
                "left": l.to_string(),
                "right": r.to_string(),
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn tensor2_payload(op: &str, input: &str, t: &Tensor2) -> Value {
    json!({
        "schema": SCHEMA,
        "op": op,
        "input": input,
        "terms": tensor2_terms(t),
        "rendered": t.to_string(),
    })
}

pub fn tensor3_terms(t: &Tensor3) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|((a, b, c), q)| {
            json!({
                "coefficient": q.to_string(),
                "legs": [a.to_string(), b.to_string(), c.to_string()],
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn trace_payload(op: &str, input: &str, steps: &[TraceStep], output: Value) -> Value {
    let applications: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "rule": s.rule,
                "input": s.input,
                "output": s.output,
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "op": op,
        "input": input,
        "rule-applications": applications,
        "output": output,
    })
}

pub fn series_payload(s: &EpsSeries) -> Value {
    let mut coeffs = Map::new();
    for (k, p) in s.coeffs() {
        coeffs.insert(k.to_string(), Value::String(p.to_string()));
    }
    json!({
        "schema": SCHEMA,
        "lo": s.lo(),
        "hi": s.hi(),
        "coeffs": Value::Object(coeffs),
    })
}

pub fn scaled_payload(s: &ScaledSum) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(key, rat)| {
            json!({
                "rat": rat.to_string(),
                "gammas": key.gammas.to_string(),
                "cpow": key.cpow,
                "slope": key.slope.to_string(),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "terms": terms,
    })
}

pub fn oracle_payload(value: f64, reference: f64, tolerance: f64) -> Value {
    let rel = if reference == 0.0 {
        (value - reference).abs()
    } else {
        ((value - reference) / reference).abs()
    };
    json!({
        "schema": SCHEMA,
        "oracle": value,
        "reference": reference,
        "relError": rel,
        "tolerance": tolerance,
        "withinTolerance": rel <= tolerance,
    })
}
