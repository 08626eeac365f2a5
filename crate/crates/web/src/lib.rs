//! Browser bindings. Each export takes plain strings and numbers and returns
//! SVG or JSON text; errors are reported as `"<Code>: <message>"`.

use ogrady_walls::arith::parse_rat;
use ogrady_walls::report::{BmReport, Bounds, ConesReport, WallsReport};
use ogrady_walls::slice::{SlicePoint, Window};
use ogrady_walls::svg::render_walls;
use ogrady_walls::{Error, MukaiVector};
use wasm_bindgen::prelude::*;

/// TS1 search bound used by the page; smaller than the CLI default to stay interactive.
pub const WEB_TS_SEARCH_BOUND: u64 = 500;

fn fail(e: Error) -> String {
    format!("{}: {e}", e.code())
}

fn rational(name: &str, s: &str) -> Result<num_rational::BigRational, String> {
    parse_rat(s).ok_or_else(|| format!("Parse: {name} must be a rational, got `{s}`"))
}

fn vector(s: &str) -> Result<MukaiVector, String> {
    s.parse().map_err(fail)
}

/// Wall diagram with cone fan for `v` at `d` in the given window.
pub fn walls_svg_impl(d: u32, v: &str, u_min: &str, u_max: &str, t_max: &str, rank_bound: u32) -> Result<String, String> {
    let v = vector(v)?;
    let window = Window { u_min: rational("u_min", u_min)?, u_max: rational("u_max", u_max)?, t_max: rational("t_max", t_max)? };
    let bounds = Bounds { rank_bound: u64::from(rank_bound.min(8)), ts_search_bound: WEB_TS_SEARCH_BOUND };
    let rep = WallsReport::compute(&v, u64::from(d), &window, bounds).map_err(fail)?;
    render_walls(&rep, true).map_err(fail)
}

pub fn cones_json_impl(d: u32) -> Result<String, String> {
    let rep = ConesReport::compute(u64::from(d)).map_err(fail)?;
    serde_json::to_string_pretty(&rep).map_err(|e| e.to_string())
}

pub fn bm_at_impl(d: u32, v: &str, u: &str, t: &str) -> Result<String, String> {
    let v = vector(v)?;
    let p = SlicePoint::new(rational("u", u)?, rational("t", t)?).map_err(fail)?;
    let rep = BmReport::compute(&v, u64::from(d), &p, None).map_err(fail)?;
    serde_json::to_string_pretty(&rep).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn walls_svg(d: u32, v: &str, u_min: &str, u_max: &str, t_max: &str, rank_bound: u32) -> Result<String, JsValue> {
    walls_svg_impl(d, v, u_min, u_max, t_max, rank_bound).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cones_json(d: u32) -> Result<String, JsValue> {
    cones_json_impl(d).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bm_at(d: u32, v: &str, u: &str, t: &str) -> Result<String, JsValue> {
    bm_at_impl(d, v, u, t).map_err(|e| JsValue::from_str(&e))
}
