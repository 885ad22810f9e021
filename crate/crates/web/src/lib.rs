//! Browser bindings: each export takes plain arguments and returns JSON.

use serde_json::json;
use wasm_bindgen::prelude::*;

use grundy_forge::gw::{crossings, curve_data, fixed_points, reduce_chain, stability_profile, FamilyKind};
use grundy_forge::Error;

fn family(name: &str) -> Result<FamilyKind, Error> {
    name.parse()
}

/// `h(s) - s` for the level-`level` reduced law, plus its fixed points.
pub fn curve_json(name: &str, param: f64, level: usize, samples: usize) -> Result<String, Error> {
    let phi = family(name)?.pgf(param)?;
    let points = curve_data(&phi, level, samples)?;
    let target = reduce_chain(&phi, level)?;
    Ok(json!({
        "pgf": target.tag(),
        "points": points,
        "crossings": crossings(&points),
        "fixed_points": fixed_points(&target)?,
    })
    .to_string())
}

pub fn profile_json(name: &str, param: f64, max_k: usize) -> Result<String, Error> {
    let p = stability_profile(&family(name)?.pgf(param)?, max_k)?;
    Ok(serde_json::to_string(&p).expect("profile serializes"))
}

pub fn solve_json(text: &str) -> Result<String, Error> {
    let s = grundy_forge::solve(&grundy_forge::load_graph(text)?);
    Ok(serde_json::to_string(&s).expect("solution serializes"))
}

fn js(r: Result<String, Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn curve(name: &str, param: f64, level: usize, samples: usize) -> Result<String, JsError> {
    js(curve_json(name, param, level, samples))
}

#[wasm_bindgen]
pub fn profile(name: &str, param: f64, max_k: usize) -> Result<String, JsError> {
    js(profile_json(name, param, max_k))
}

#[wasm_bindgen(js_name = solveGraph)]
pub fn solve_graph(text: &str) -> Result<String, JsError> {
    js(solve_json(text))
}
