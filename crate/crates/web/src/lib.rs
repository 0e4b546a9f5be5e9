//! wasm-bindgen entry points for the browser demo in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic so
//! they can be tested natively.

use p3bundles_core::bundle::{classify_rank2, classify_rank3};
use p3bundles_core::cohomology::cohomology;
use p3bundles_core::moduli::{
    rank2_dim_bounds, rank2_exact_dim, rank3_line_h1_k_large, rank3_line_report_k2, rank3_line_report_k3,
};
use p3bundles_core::{BundleSpec, DivisorClass, Error, SurfaceClass};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest grid side accepted from the page.
pub const MAX_SIDE: i64 = 60;

#[derive(Serialize)]
struct Cell {
    a: i64,
    b: i64,
    status: String,
    reason: String,
}

#[derive(Serialize)]
struct Grid<T> {
    k: i64,
    rows: Vec<Vec<T>>,
}

fn side(name: &str, n: i64) -> Result<i64, String> {
    if (0..=MAX_SIDE).contains(&n) {
        Ok(n)
    } else {
        Err(format!("{name} must be in 0..={MAX_SIDE}, got {n}"))
    }
}

fn text(e: Error) -> String {
    e.to_string()
}

/// Stability verdicts for `0 ≤ a, b ≤ max`, one row per `a`.
pub fn classify_grid_json(rank: u32, k: i64, max: i64) -> Result<String, String> {
    let max = side("max", max)?;
    let mut rows = Vec::new();
    for a in 0..=max {
        let mut row = Vec::new();
        for b in 0..=max {
            let verdict = match rank {
                2 => BundleSpec::rank2_on(k, a, b).and_then(|s| classify_rank2(&s)),
                3 => BundleSpec::rank3_line_on(k, a, b).and_then(|s| classify_rank3(&s)),
                r => Err(Error::UnsupportedRank(r)),
            }
            .map_err(text)?;
            row.push(Cell { a, b, status: verdict.status.to_string(), reason: verdict.reason.text });
        }
        rows.push(row);
    }
    serde_json::to_string(&Grid { k, rows }).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CohomCell {
    a: i64,
    b: i64,
    h0: i64,
    h1: i64,
    h2: i64,
}

/// `h^i(O_S(aL + bC))` for `|a|, |b| ≤ radius`, one row per `a`.
pub fn cohomology_table_json(k: i64, radius: i64) -> Result<String, String> {
    let radius = side("radius", radius)?;
    let s = SurfaceClass::new(k).map_err(text)?;
    let mut rows = Vec::new();
    for a in -radius..=radius {
        let mut row = Vec::new();
        for b in -radius..=radius {
            let h = cohomology(DivisorClass::new(a, b), &s).map_err(text)?;
            row.push(CohomCell { a, b, h0: h.h0, h1: h.h1, h2: h.h2 });
        }
        rows.push(row);
    }
    serde_json::to_string(&Grid { k, rows }).map_err(|e| e.to_string())
}

/// Moduli report for one bundle; rank 2 uses the `a = 0` family and ignores `a`.
pub fn moduli_report_json(rank: u32, k: i64, a: i64, b: i64) -> Result<String, String> {
    let report = match (rank, k) {
        (2, 2 | 3) => rank2_exact_dim(k, b),
        (2, _) => rank2_dim_bounds(k, b),
        (3, 2) => rank3_line_report_k2(a, b),
        (3, 3) => rank3_line_report_k3(a, b),
        (3, _) => rank3_line_h1_k_large(k, a, b),
        (r, _) => Err(Error::UnsupportedRank(r)),
    }
    .map_err(text)?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn classify_grid(rank: u32, k: i32, max: i32) -> Result<String, JsValue> {
    classify_grid_json(rank, k.into(), max.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cohomology_table(k: i32, radius: i32) -> Result<String, JsValue> {
    cohomology_table_json(k.into(), radius.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn moduli_report(rank: u32, k: i32, a: i32, b: i32) -> Result<String, JsValue> {
    moduli_report_json(rank, k.into(), a.into(), b.into()).map_err(|e| JsValue::from_str(&e))
}
