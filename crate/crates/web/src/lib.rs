//! Browser bindings: univariate factorization, plane tropical curves and vertical stable
//! intersections. Every entry point returns a JSON string; errors are `{"error": ...}`.

use serde_json::{json, Value};
use tropical_core::complex::{hypersurface, WeightedComplex};
use tropical_core::export::{complex_to_svg, weighted_to_json};
use tropical_core::parse::parse_trop;
use tropical_core::poly::{Ambient, TropPoly};
use tropical_core::scalar::{fmt_q, parse_q};
use tropical_core::univariate::{convexify, factor};
use wasm_bindgen::prelude::*;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn curve(src: &str) -> Result<(TropPoly, WeightedComplex), String> {
    let f = parse_trop(src, &names(&["x", "y"]), Ambient::Affine(2)).map_err(|e| e.to_string())?;
    let h = hypersurface(&f).map_err(|e| e.to_string())?;
    Ok((f, h))
}

pub fn factor_json(src: &str) -> String {
    wrap((|| {
        let f = parse_trop(src, &names(&["x"]), Ambient::Affine(1)).map_err(|e| e.to_string())?;
        let c = convexify(&f).map_err(|e| e.to_string())?;
        let fa = factor(&f).map_err(|e| e.to_string())?;
        let roots: Vec<Value> = fa.roots.iter().map(|r| json!({ "root": fmt_q(&r.w), "mult": r.mult })).collect();
        Ok(json!({
            "convexification": c.min_syntax_with(&names(&["x"])),
            "factorization": fa.display("x"),
            "roots": roots,
        }))
    })())
}

pub fn curve_json(src: &str) -> String {
    wrap((|| {
        let (_, h) = curve(src)?;
        let witness = h.check_balanced().map_err(|e| e.to_string())?;
        let svg = complex_to_svg(&h.complex(), Some(&h)).map_err(|e| e.to_string())?;
        Ok(json!({
            "svg": svg,
            "balanced": witness.is_none(),
            "edges": h.cells().len(),
            "total_weight": h.total_weight(),
            "complex": weighted_to_json(&h),
        }))
    })())
}

pub fn intersect_json(src: &str, a: &str) -> String {
    wrap((|| {
        let (_, h) = curve(src)?;
        let a = parse_q(a).ok_or_else(|| format!("`{a}` is not a rational number"))?;
        let s = h.stable_intersect_hyperplane(0, &a).map_err(|e| e.to_string())?;
        let points: Vec<Value> =
            s.cells().iter().map(|(c, m)| json!({ "y": fmt_q(&c.relint_point()[0]), "mult": m })).collect();
        Ok(json!({ "x": fmt_q(&a), "points": points, "total_weight": s.total_weight() }))
    })())
}

/// Tropical roots of a univariate polynomial in min syntax, e.g. `min(3x, 1+2x, x, 1)`.
#[wasm_bindgen]
pub fn factor_univariate(src: &str) -> String {
    factor_json(src)
}

/// The weighted curve V(f) of a polynomial in x, y: SVG drawing, weights and balancing.
#[wasm_bindgen]
pub fn plane_curve(src: &str) -> String {
    curve_json(src)
}

/// Stable intersection of V(f) with the vertical line x = a.
#[wasm_bindgen]
pub fn vertical_intersection(src: &str, a: &str) -> String {
    intersect_json(src, a)
}
