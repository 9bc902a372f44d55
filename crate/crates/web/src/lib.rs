//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain strings and returns a JSON string; the
//! work happens in the `*_json` functions so it can be tested natively.

use causex_core::causes::minimal_causes;
use causex_core::game::make_weighted_voting;
use causex_core::indices::{all_indices, compute_index, IndexKind, Scale};
use causex_core::io::{family_json, index_json, parse_problem, rational_json};
use causex_core::rational::{parse_rational, to_f64, Rational};
use causex_core::sampling::{estimate_index, SamplingConfig};
use causex_core::GameOracle;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest game the page will enumerate exactly.
pub const DEMO_LIMIT: usize = 16;

/// Failure probability used for the Hoeffding envelope on the chart.
const DELTA: f64 = 0.05;

fn weighted_game(weights: &str, threshold: &str) -> Result<GameOracle, String> {
    let weights: Vec<Rational> = weights
        .split(',')
        .map(|w| parse_rational(w).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if weights.len() > DEMO_LIMIT {
        return Err(format!("the demo handles at most {DEMO_LIMIT} features"));
    }
    let q = parse_rational(threshold).map_err(|e| e.to_string())?;
    make_weighted_voting(weights, q).map_err(|e| e.to_string())
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Minimal causes and all six raw indices of a weighted voting game.
pub fn weighted_indices_json(weights: &str, threshold: &str) -> Result<String, String> {
    let game = weighted_game(weights, threshold)?;
    let names = default_names(game.n());
    let family = minimal_causes(&game).map_err(|e| e.to_string())?;
    let indices = all_indices(&game, Scale::Raw).map_err(|e| e.to_string())?;
    Ok(json!({
        "minimal": family_json(&family, &names),
        "indices": indices.iter().map(|v| index_json(v, &names)).collect::<Vec<_>>(),
    })
    .to_string())
}

/// Estimates at `m = 16, 32, ...` up to `max_m` against the exact raw index,
/// with the Hoeffding half-width `sqrt(ln(2n/delta)/m)` for each `m`.
pub fn convergence_json(weights: &str, threshold: &str, kind: &str, seed: u64, max_m: u64) -> Result<String, String> {
    let game = weighted_game(weights, threshold)?;
    let kind: IndexKind = kind.parse().map_err(|e: causex_core::Error| e.to_string())?;
    let exact = compute_index(&game, kind, Scale::Raw).map_err(|e| e.to_string())?;
    let n = game.n();
    let mut points = Vec::new();
    let mut m = 16u64;
    while m <= max_m.min(1 << 20) {
        let config = SamplingConfig::with_samples(m, seed).map_err(|e| e.to_string())?;
        let report = estimate_index(&game, kind, &config).map_err(|e| e.to_string())?;
        let errors: Vec<f64> = report
            .estimates
            .values
            .iter()
            .zip(&exact.values)
            .map(|(a, b)| (to_f64(a) - to_f64(b)).abs())
            .collect();
        points.push(json!({
            "m": m,
            "estimates": report.estimates.to_f64(),
            "max_error": errors.iter().cloned().fold(0.0, f64::max),
            "bound": ((2.0 * n as f64 / DELTA).ln() / m as f64).sqrt(),
        }));
        m *= 2;
    }
    Ok(json!({
        "kind": kind.name(),
        "exact": exact.values.iter().map(rational_json).collect::<Vec<_>>(),
        "points": points,
    })
    .to_string())
}

/// Minimal causes, a witnessing alternative per cause when the input is a
/// causal model, and the responsibility index, for a game or model document.
pub fn explain_document_json(document: &str) -> Result<String, String> {
    let problem = parse_problem(document).map_err(|e| e.to_string())?;
    if problem.n() > DEMO_LIMIT {
        return Err(format!("the demo handles at most {DEMO_LIMIT} features"));
    }
    let family = minimal_causes(&problem.game).map_err(|e| e.to_string())?;
    let rho = compute_index(&problem.game, IndexKind::Responsibility, Scale::Raw).map_err(|e| e.to_string())?;
    let witnesses: Value = match &problem.causal {
        Some(setup) => family.causes().iter().map(|s| json!(setup.value.witness(*s))).collect(),
        None => Value::Null,
    };
    Ok(json!({
        "minimal": family_json(&family, &problem.names),
        "responsibility": index_json(&rho, &problem.names),
        "witnesses": witnesses,
    })
    .to_string())
}

fn to_js(result: Result<String, String>) -> Result<String, JsError> {
    result.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weighted_indices(weights: &str, threshold: &str) -> Result<String, JsError> {
    to_js(weighted_indices_json(weights, threshold))
}

#[wasm_bindgen]
pub fn convergence(weights: &str, threshold: &str, kind: &str, seed: u32, max_m: u32) -> Result<String, JsError> {
    to_js(convergence_json(weights, threshold, kind, u64::from(seed), u64::from(max_m)))
}

#[wasm_bindgen]
pub fn explain_document(document: &str) -> Result<String, JsError> {
    to_js(explain_document_json(document))
}
