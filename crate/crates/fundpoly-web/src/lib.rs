//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export has a plain Rust twin returning `Result<_, String>` so the
//! logic can be tested natively; the `#[wasm_bindgen]` wrappers only turn the
//! error into a JavaScript exception.

use fundpoly::canonical_completion::{all_roots, upper_bound};
use fundpoly::code_model::{parse_matrix, ParityCheckMatrix};
use fundpoly::decoders::MpOptions;
use fundpoly::pseudoweights::WeightReport;
use fundpoly::rational_geometry::{fmt_rat, parse_vec, to_f64};
use fundpoly::regions::{sweep, DecoderSpec, Grid, Plane};
use fundpoly::{catalog, Limits};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest grid the page may request; keeps a single call under a few seconds.
pub const MAX_RES: usize = 301;

/// A built-in code name, or the text of an alist or dense matrix file.
pub fn load_code(code: &str) -> Result<ParityCheckMatrix, String> {
    match catalog::by_name(code.trim()) {
        Some(h) => Ok(h),
        None => parse_matrix(code).map_err(|e| e.to_string()),
    }
}

fn decoder_spec(name: &str) -> Result<DecoderSpec, String> {
    match name {
        "mld" => Ok(DecoderSpec::Mld),
        "lpd" => Ok(DecoderSpec::Lpd),
        "spa" => Ok(DecoderSpec::Spa(MpOptions::default())),
        "msa" => Ok(DecoderSpec::Msa(MpOptions::default())),
        other => Err(format!("unknown decoder {other:?}")),
    }
}

/// RGBA pixels (top row = largest b) of the decision regions on the plane
/// spanned by LLR axes `a_axis` and `b_axis` (1-based), all other LLRs 0.
/// Each decision gets its own gray level; non-converged pixels are red.
pub fn region_rgba(code: &str, decoder: &str, a_axis: usize, b_axis: usize, min: f64, max: f64, res: usize) -> Result<Vec<u8>, String> {
    let h = load_code(code)?;
    if !(2..=MAX_RES).contains(&res) {
        return Err(format!("resolution must lie in 2..={MAX_RES}"));
    }
    if a_axis == 0 || b_axis == 0 {
        return Err("axes are numbered from 1".into());
    }
    let plane = Plane::axes(h.n(), a_axis - 1, b_axis - 1, &[]).map_err(|e| e.to_string())?;
    let grid = Grid::new(min, max, res).map_err(|e| e.to_string())?;
    let result = sweep(&h, &plane, grid, decoder_spec(decoder)?, &Limits::default()).map_err(|e| e.to_string())?;
    let mut rgba = Vec::with_capacity(4 * res * res);
    for kb in (0..res).rev() {
        for p in &result.pixels[kb * res..(kb + 1) * res] {
            let g = 255 - result.level(p);
            let px = if p.converged { [g, g, g, 255] } else { [200, 30, 30, 255] };
            rgba.extend_from_slice(&px);
        }
    }
    Ok(rgba)
}

/// Pseudo-weights of a comma-separated vector ("2/3,2/3,0" or decimals) as JSON.
pub fn pseudo_weights_json(omega: &str) -> Result<String, String> {
    let v = parse_vec(omega).map_err(|e| e.to_string())?;
    let report = WeightReport::new(&v).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// Canonical-completion weight for every root, plus the sub-linear bound
/// when the code is regular enough for it, as JSON.
pub fn completion_json(code: &str) -> Result<String, String> {
    let h = load_code(code)?;
    let roots = all_roots(&h).map_err(|e| e.to_string())?;
    let rows: Vec<_> = roots
        .iter()
        .map(|w| {
            json!({
                "root": w.root + 1,
                "w_awgnc": fmt_rat(&w.w_awgnc),
                "w_awgnc_f64": to_f64(&w.w_awgnc),
                "tier_profile": w.tier_profile,
            })
        })
        .collect();
    let bound = match (h.uniform_col_weight(), h.uniform_row_weight()) {
        (Some(c), Some(r)) => upper_bound(c, r, h.n()).ok(),
        _ => None,
    };
    Ok(json!({ "n": h.n(), "roots": rows, "upper_bound": bound }).to_string())
}

fn js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

#[wasm_bindgen(js_name = regionRgba)]
pub fn region_rgba_js(code: &str, decoder: &str, a_axis: usize, b_axis: usize, min: f64, max: f64, res: usize) -> Result<Vec<u8>, JsValue> {
    region_rgba(code, decoder, a_axis, b_axis, min, max, res).map_err(js)
}

#[wasm_bindgen(js_name = pseudoWeights)]
pub fn pseudo_weights_js(omega: &str) -> Result<String, JsValue> {
    pseudo_weights_json(omega).map_err(js)
}

#[wasm_bindgen(js_name = canonicalCompletion)]
pub fn completion_js(code: &str) -> Result<String, JsValue> {
    completion_json(code).map_err(js)
}

#[wasm_bindgen(js_name = catalogNames)]
pub fn catalog_names() -> String {
    catalog::NAMES.join(",")
}
