//! Browser bindings for the segment demo page in `www/`.
//!
//! Every export returns a JSON string. The plain functions (without the
//! `_js` suffix) carry the logic and are usable natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use segconn::census::{self, Phi};
use segconn::cube::{self, CurveIndex};
use segconn::mesh::{self, Geometry, MeshView};
use segconn::simplex::{self, TmRank};
use segconn::{Error, Result, Segment};

/// Largest level the page may request; keeps meshes small enough to draw.
pub const MAX_DEMO_LEVEL: u32 = 7;

fn planar(geometry: &str, level: u32) -> Result<Geometry> {
    let g: Geometry = geometry.parse()?;
    if g.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "the demo draws 2D meshes only, not {g}"
        )));
    }
    if level > MAX_DEMO_LEVEL {
        return Err(Error::Domain(format!(
            "level {level} exceeds the demo limit {MAX_DEMO_LEVEL}"
        )));
    }
    Ok(g)
}

/// Polygons of all elements in curve order, in unit-square coordinates.
pub fn mesh_polygons(geometry: &str, level: u32) -> Result<String> {
    let g = planar(geometry, level)?;
    let n = g.element_count(level)?;
    let scale = (1u64 << level) as f64;
    let polygons: Vec<Vec<[f64; 2]>> = (0..n)
        .map(|r| match g {
            Geometry::Cube { .. } => {
                let x = cube::decode(&CurveIndex::new(2, level, r).unwrap());
                let (a, b) = (x.as_slice()[0] as f64, x.as_slice()[1] as f64);
                [[a, b], [a + 1.0, b], [a + 1.0, b + 1.0], [a, b + 1.0]]
                    .iter()
                    .map(|p| [p[0] / scale, p[1] / scale])
                    .collect()
            }
            Geometry::Simplex { .. } => simplex::simplex_at(&TmRank::new(2, level, r).unwrap())
                .vertices()
                .iter()
                .map(|v| [v[0] as f64 / scale, v[1] as f64 / scale])
                .collect(),
        })
        .collect();
    Ok(json!({ "geometry": g.to_string(), "level": level, "polygons": polygons }).to_string())
}

/// Component count and per-element component labels of `[start, end]`.
pub fn segment_components(geometry: &str, level: u32, start: u32, end: u32) -> Result<String> {
    let g = planar(geometry, level)?;
    let seg = Segment::new(start as u128, end as u128)?;
    let view = MeshView::new(g, level)?;
    let comps = mesh::count_components(&view, &seg)?;
    Ok(json!({
        "start": start,
        "end": end,
        "count": comps.count,
        "labels": comps.labels,
        "sizes": comps.sizes(),
    })
    .to_string())
}

/// Census and connected fraction of all length-`length` segments of the
/// `dim`-dimensional cubical curve. `length` is a decimal string so that
/// lengths beyond 2^53 survive the trip through JavaScript.
pub fn phi_census(dim: u32, level: u32, length: &str) -> Result<String> {
    let l: u128 = length
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("invalid length '{length}'")))?;
    let c = census::enumerate(dim, level, l)?;
    let phi = Phi::from_census(&c);
    let weak: Vec<Value> = c
        .weak
        .iter()
        .map(|w| Value::String(w.to_string()))
        .collect();
    Ok(json!({
        "dim": dim,
        "level": level,
        "length": l.to_string(),
        "disconnected": c.disconnected.to_string(),
        "strong": c.strong.to_string(),
        "weak": weak,
        "phi": phi.to_decimal(6),
        "bound": census::decimal(1, (1u128 << dim) - 1, 6),
    })
    .to_string())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = meshPolygons)]
pub fn mesh_polygons_js(geometry: &str, level: u32) -> std::result::Result<String, JsError> {
    js(mesh_polygons(geometry, level))
}

#[wasm_bindgen(js_name = segmentComponents)]
pub fn segment_components_js(
    geometry: &str,
    level: u32,
    start: u32,
    end: u32,
) -> std::result::Result<String, JsError> {
    js(segment_components(geometry, level, start, end))
}

#[wasm_bindgen(js_name = phiCensus)]
pub fn phi_census_js(dim: u32, level: u32, length: &str) -> std::result::Result<String, JsError> {
    js(phi_census(dim, level, length))
}
