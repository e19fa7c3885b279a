//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use bs_core::affine::{canonical_word, gamma_quot_image, lcs_weight, to_affine_with, Weight};
use bs_core::britton::{Britton, BsParams};
use bs_core::classify::sweep;
use bs_core::words::parse_word_with;
use bs_core::{Error, Limits};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps a stray `a^99999…` from freezing the tab.
const DEMO_MAX_BITS: u64 = 2048;
const GRID_MAX: i64 = 16;

fn limits() -> Limits {
    Limits::with_max_bits(DEMO_MAX_BITS)
}

fn respond(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

pub fn normalize_json(m: i64, n: i64, word: &str) -> Result<Value, Error> {
    let engine = Britton::with_limits(BsParams::new(m, n)?, limits());
    let w = parse_word_with(word, &limits())?;
    let nf = engine.normalize(&w)?;
    Ok(json!({
        "group": engine.params().to_string(),
        "input": w.to_string(),
        "normal_form": nf.to_string(),
        "t_length": nf.t_length(),
        "is_identity": nf.is_identity(),
        "abelianization": engine.abelianize(&w).to_string(),
    }))
}

pub fn classify_grid_json(m_max: i64, n_max: i64) -> Result<Value, Error> {
    if !(1..=GRID_MAX).contains(&m_max) || !(1..=GRID_MAX).contains(&n_max) {
        return Err(Error::Precondition(format!("grid bounds must lie in 1..={GRID_MAX}")));
    }
    Ok(serde_json::to_value(sweep(m_max, n_max)?).expect("rows serialize"))
}

/// Weight of `word` in BS(1,n), plus its images in the successive
/// quotients `γ_i/γ_(i+1)` up to the first nonzero one.
pub fn weight_profile_json(n: i64, word: &str) -> Result<Value, Error> {
    let w = parse_word_with(word, &limits())?;
    let g = to_affine_with(n, &w, &limits())?;
    let weight = lcs_weight(n, &g)?;
    let top = match weight {
        Weight::Finite(i) => i,
        Weight::Omega => 0,
    };
    let mut images = Vec::new();
    if (n - 1).unsigned_abs() > 1 {
        for i in 2..=top.min(64) {
            images.push(json!({ "i": i, "residue": gamma_quot_image(n, i, &g)?.to_string() }));
        }
    }
    Ok(json!({
        "n": n,
        "input": w.to_string(),
        "affine": g.to_string(),
        "canonical_word": canonical_word(n, &g).to_string(),
        "weight": weight.to_string(),
        "quotient_images": images,
        "modulus": (n - 1).unsigned_abs(),
    }))
}

#[wasm_bindgen]
pub fn normalize(m: i32, n: i32, word: &str) -> String {
    respond(normalize_json(m.into(), n.into(), word))
}

#[wasm_bindgen]
pub fn classify_grid(m_max: i32, n_max: i32) -> String {
    respond(classify_grid_json(m_max.into(), n_max.into()))
}

#[wasm_bindgen]
pub fn weight_profile(n: i32, word: &str) -> String {
    respond(weight_profile_json(n.into(), word))
}
