//! Browser bindings. Every entry point returns a JSON string of the form
//! `{"ok": true, "result": ...}` or `{"ok": false, "error": "..."}` so the
//! page never has to catch exceptions.

use qrr_core::{catalog, prooftrace, qdsl, QError};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest order the page may request; keeps the tab responsive.
pub const MAX_ORDER: i64 = 400;

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": true, "result": v }),
        Err(e) => json!({ "ok": false, "error": e }),
    }
    .to_string()
}

fn check_order(order: i32) -> Result<i64, String> {
    let n = i64::from(order);
    if !(0..=MAX_ORDER).contains(&n) {
        return Err(format!("order must be between 0 and {MAX_ORDER}"));
    }
    Ok(n)
}

fn err(e: QError) -> String {
    e.to_string()
}

fn coefficients(s: &qrr_core::QLaurent) -> Value {
    json!(s.to_triples())
}

/// Expand an expression, or both sides of `lhs \n=\n rhs`.
#[wasm_bindgen]
pub fn expand(text: &str, order: i32) -> String {
    wrap((|| {
        let n = check_order(order)?;
        let file = qdsl::parse_file(text).map_err(|e| e.to_string())?;
        let lhs = qdsl::eval(&file.lhs, n).map_err(err)?;
        let Some(rhs) = &file.rhs else {
            return Ok(json!({ "order": n, "series": lhs.to_string(), "coefficients": coefficients(&lhs) }));
        };
        let rhs = qdsl::eval(rhs, n).map_err(err)?;
        Ok(json!({
            "order": n,
            "lhs": { "series": lhs.to_string(), "coefficients": coefficients(&lhs) },
            "rhs": { "series": rhs.to_string(), "coefficients": coefficients(&rhs) },
            "first_mismatch": lhs.first_mismatch(&rhs),
        }))
    })())
}

/// Catalog entries.
#[wasm_bindgen]
pub fn list() -> String {
    let infos: Vec<_> = catalog::identities().iter().map(catalog::Identity::metadata).collect();
    wrap(serde_json::to_value(infos).map_err(|e| e.to_string()))
}

/// Verify one catalog identity, or all of them when `id` is `"all"`.
#[wasm_bindgen]
pub fn verify(id: &str, order: i32) -> String {
    wrap((|| {
        let n = check_order(order)?;
        let v = if id.eq_ignore_ascii_case("all") {
            serde_json::to_value(catalog::verify_all(n))
        } else {
            serde_json::to_value(catalog::verify(id, n, None).map_err(err)?)
        };
        v.map_err(|e| e.to_string())
    })())
}

/// Replay the proof trace of theorem `k`.
#[wasm_bindgen]
pub fn proof(k: u32, order: i32) -> String {
    wrap((|| {
        let n = check_order(order)?;
        let t = prooftrace::run_trace(k, n).map_err(err)?;
        Ok(json!({ "trace": t, "text": t.to_string() }))
    })())
}
