//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string.
//! The `*_json` functions hold the logic and run natively as well; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use lme_core::{
    classify, dimension, hyperdet_nonzero, invariant_degrees, reduced_density, run_recursion,
    search_witness, validate_dims, DimVec, InvariantBundle, WitnessConfig,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Accepts `"2 3 4"`, `"2,3,4"` or `"(2, 3, 4)"`.
pub fn parse_dims(text: &str) -> Result<DimVec, String> {
    let raw: Vec<i64> = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == '(' || c == ')')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| format!("not an integer: {s:?}"))
        })
        .collect::<Result<_, _>>()?;
    validate_dims(&raw).map_err(|e| e.to_string())
}

pub fn classify_json(dims: &str) -> Result<String, String> {
    let d = parse_dims(dims)?;
    let c = classify(&d).map_err(|e| e.to_string())?;
    let t = run_recursion(&d).map_err(|e| e.to_string())?;
    let degrees = invariant_degrees(&d, 120).map_err(|e| e.to_string())?;
    let v = json!({
        "dims": d,
        "status": c.status.to_string(),
        "code": c.status.code(),
        "delta": c.invariants.delta,
        "r": c.invariants.r,
        "gmax": c.invariants.gmax,
        "product": c.invariants.product,
        "rule": c.rule,
        "recursion": {
            "steps": t.steps,
            "case": t.case.to_string(),
            "d_value": t.d_value,
        },
        "agree": c.status.code() == t.d_value,
        "hyperdet_nonzero": hyperdet_nonzero(&d),
        "invariant_degrees": degrees,
    });
    Ok(v.to_string())
}

/// Fixes `d_1, ..., d_{n-1}` and walks the last entry over
/// `d_{n-1} ..= max_last`, reporting `Delta`, `R` and `D` at each value.
pub fn sweep_last_json(prefix: &str, max_last: u64) -> Result<String, String> {
    let head: Vec<u64> = parse_prefix(prefix)?;
    let start = head.iter().copied().max().unwrap_or(1).max(1);
    if max_last < start {
        return Err(format!("last entry range is empty: {start}..={max_last}"));
    }
    if max_last - start > 100_000 {
        return Err("at most 100000 points per sweep".into());
    }
    let mut points: Vec<Value> = Vec::new();
    for last in start..=max_last {
        let mut raw = head.clone();
        raw.push(last);
        let d = DimVec::new(&raw).map_err(|e| e.to_string())?;
        let inv = InvariantBundle::compute(&d).map_err(|e| e.to_string())?;
        let dim = dimension(&d).map_err(|e| e.to_string())?;
        points.push(json!({ "last": last, "delta": inv.delta, "r": inv.r, "d": dim }));
    }
    let p: u64 = head.iter().product();
    Ok(json!({ "prefix": head, "p": p, "points": points }).to_string())
}

fn parse_prefix(text: &str) -> Result<Vec<u64>, String> {
    let head: Vec<u64> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<u64>() {
            Ok(0) | Err(_) => Err(format!("not a positive integer: {s:?}")),
            Ok(v) => Ok(v),
        })
        .collect::<Result<_, _>>()?;
    if head.is_empty() {
        return Err("prefix needs at least one entry".into());
    }
    Ok(head)
}

pub fn witness_json(dims: &str, seed: u64, restarts: u32) -> Result<String, String> {
    let d = parse_dims(dims)?;
    let cfg = WitnessConfig {
        seed,
        restarts,
        max_amplitudes: 4096,
        ..WitnessConfig::default()
    };
    let rep = search_witness(&d, &cfg).map_err(|e| e.to_string())?;
    let marginals: Vec<Value> = (0..d.len())
        .map(|i| {
            let rho = reduced_density(&rep.best_state, i).expect("index in range");
            let n = rho.dim();
            let re: Vec<Vec<f64>> = (0..n)
                .map(|r| (0..n).map(|c| rho.matrix[(r, c)].re).collect())
                .collect();
            let im: Vec<Vec<f64>> = (0..n)
                .map(|r| (0..n).map(|c| rho.matrix[(r, c)].im).collect())
                .collect();
            json!({
                "dim": n,
                "re": re,
                "im": im,
                "eigenvalues": rho.eigenvalues(),
                "deviation": rep.per_subsystem_deviation[i],
            })
        })
        .collect();
    let v = json!({
        "dims": d,
        "predicted": rep.predicted.status.to_string(),
        "succeeded": rep.succeeded,
        "residual": rep.best_residual,
        "restarts_used": rep.restarts_used,
        "best_restart": rep.best_restart,
        "iterations_total": rep.iterations_total,
        "marginals": marginals,
    });
    Ok(v.to_string())
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(dims: &str) -> Result<String, JsError> {
    classify_json(dims).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sweepLast)]
pub fn sweep_last_js(prefix: &str, max_last: u32) -> Result<String, JsError> {
    sweep_last_json(prefix, max_last as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = witness)]
pub fn witness_js(dims: &str, seed: u32, restarts: u32) -> Result<String, JsError> {
    witness_json(dims, seed as u64, restarts).map_err(|e| JsError::new(&e))
}
