//! Versioned JSON reports and their plain-text renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::fmt_rat;
use crate::arith::serde_exact::Int;
use crate::classify::{classify_wall, WallClassification};
use crate::cones::{cone_position, cone_report, ConePosition, ConeRay, ConeReport};
use crate::lattice::{make_wall_lattice, LatticeData};
use crate::mukai::{MukaiVector, Surface};
use crate::slice::{bm_ray, enumerate_walls, numerical_wall, BMImage, SlicePoint, WallCurve, WallRecord, WallShape, Window};
use crate::{Error, Result, TOOL_VERSION};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub rank_bound: u64,
    pub ts_search_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub v: MukaiVector,
    pub d: u64,
    pub window: Window,
    pub bounds: Bounds,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallsReport {
    pub schema: u32,
    pub header: Header,
    pub walls: Vec<WallRecord>,
}

impl WallsReport {
    pub fn compute(v: &MukaiVector, d: u64, window: &Window, bounds: Bounds) -> Result<Self> {
        let s = Surface::new(d)?;
        let walls = enumerate_walls(v, &s, window, bounds.rank_bound, bounds.ts_search_bound)?;
        Ok(Self {
            schema: SCHEMA_VERSION,
            header: Header { v: v.clone(), d, window: window.clone(), bounds, tool_version: TOOL_VERSION.to_string() },
            walls,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema: u32,
    pub d: u64,
    pub v: MukaiVector,
    pub u: MukaiVector,
    pub curve: WallCurve,
    pub lattice: LatticeData,
    pub classification: WallClassification,
}

impl ClassifyReport {
    pub fn compute(v: &MukaiVector, u: &MukaiVector, d: u64, ts_search_bound: u64) -> Result<Self> {
        let s = Surface::new(d)?;
        let lattice = make_wall_lattice(v, u, &s)?;
        let curve = numerical_wall(v, u, &s);
        let classification = classify_wall(&lattice, v, &curve, ts_search_bound)?;
        Ok(Self { schema: SCHEMA_VERSION, d, v: v.clone(), u: u.clone(), curve, lattice: lattice.data(), classification })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConesReport {
    pub schema: u32,
    #[serde(flatten)]
    pub cones: ConeReport,
}

impl ConesReport {
    pub fn compute(d: u64) -> Result<Self> {
        Ok(Self { schema: SCHEMA_VERSION, cones: cone_report(d)? })
    }
}

/// Sign of a point relative to one wall of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSide {
    pub index: usize,
    /// `-1`, `0` (on the wall) or `1`.
    pub side: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmReport {
    pub schema: u32,
    pub d: u64,
    pub v: MukaiVector,
    pub point: SlicePoint,
    pub image: BMImage,
    /// Primitive integral ray through `ns_coords`.
    pub ray: Option<ConeRay>,
    pub position: Option<ConePosition>,
    /// Side of each wall of a supplied report; empty without one.
    #[serde(default)]
    pub chamber: Vec<WallSide>,
}

impl BmReport {
    pub fn compute(v: &MukaiVector, d: u64, point: &SlicePoint, walls: Option<&WallsReport>) -> Result<Self> {
        let s = Surface::new(d)?;
        let image = bm_ray(v, &s, point)?;
        let (ray, position) = match image.ns() {
            Some((h, b)) => (primitive_ray(&h, &b), Some(cone_position(d, &h, &b)?)),
            None => (None, None),
        };
        let chamber = match walls {
            Some(rep) => {
                if rep.header.d != d || rep.header.v != *v {
                    return Err(Error::Parse("wall report was computed for a different v or d".into()));
                }
                chamber_signature(&rep.walls, point)
            }
            None => Vec::new(),
        };
        Ok(Self { schema: SCHEMA_VERSION, d, v: v.clone(), point: point.clone(), image, ray, position, chamber })
    }
}

fn primitive_ray(h: &BigRational, b: &BigRational) -> Option<ConeRay> {
    use num_integer::Integer;
    use num_traits::Zero;
    if h.is_zero() && b.is_zero() {
        return None;
    }
    let l = h.denom().lcm(b.denom());
    let hh = (h * BigRational::from_integer(l.clone())).to_integer();
    let bb = (b * BigRational::from_integer(l)).to_integer();
    Some(ConeRay::new(hh, bb))
}

/// Sides of `p` relative to each wall; walls that are empty or degenerate are skipped.
pub fn chamber_signature(walls: &[WallRecord], p: &SlicePoint) -> Vec<WallSide> {
    walls
        .iter()
        .enumerate()
        .filter(|(_, w)| matches!(w.curve.shape, WallShape::Circle { .. } | WallShape::VerticalLine { .. }))
        .map(|(index, w)| WallSide { index, side: w.curve.side(p) as i8 })
        .collect()
}

fn fmt_shape(shape: &WallShape) -> String {
    match shape {
        WallShape::Circle { center_u, radius_sq } => {
            format!("circle center {} radius^2 {}", fmt_rat(center_u), fmt_rat(radius_sq))
        }
        WallShape::VerticalLine { u0 } => format!("vertical line u = {}", fmt_rat(u0)),
        WallShape::Empty => "empty".into(),
        WallShape::Degenerate => "degenerate".into(),
    }
}

fn fmt_classification(out: &mut String, c: &WallClassification) {
    let _ = writeln!(out, "kind: {:?}", c.kind);
    let _ = writeln!(out, "totally semistable: {}", c.totally_semistable);
    for w in &c.witnesses {
        let eff = match w.effective {
            Some(true) => "effective",
            Some(false) => "not effective",
            None => "effectivity undecided",
        };
        let _ = writeln!(out, "  {:?} witness {} ({eff})", w.label, w.class);
    }
    if c.ts1_search_bounded {
        let _ = writeln!(out, "  (TS1 search exhausted its bound)");
    }
}

fn fmt_gram(g: &[[Int; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", g[0][0].0, g[0][1].0, g[1][0].0, g[1][1].0)
}

pub fn classify_text(r: &ClassifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "v = {}, u = {}, d = {}", r.v, r.u, r.d);
    let _ = writeln!(out, "wall: {}", fmt_shape(&r.curve.shape));
    let _ = writeln!(out, "lattice basis {} {}, gram {}", r.lattice.basis[0], r.lattice.basis[1], fmt_gram(&r.lattice.gram));
    fmt_classification(&mut out, &r.classification);
    out
}

fn fmt_cone(ray: &ConeRay) -> String {
    format!("<H~, {ray}>")
}

pub fn cones_text(r: &ConesReport) -> String {
    let c = &r.cones;
    let mut out = String::new();
    let _ = writeln!(out, "d = {}", c.d.0);
    let _ = writeln!(out, "mov: {}  ({:?})", fmt_cone(&c.movable.ray_high), c.movable.case_tag);
    let _ = writeln!(out, "nef: {}  ({:?})", fmt_cone(&c.nef.ray_high), c.nef.case_tag);
    if c.nef.ambiguous {
        let _ = writeln!(out, "note: both flopping equations are soluble; the smaller slope was used");
    }
    match &c.square_zero {
        Some(ray) => {
            let _ = writeln!(out, "lagrangian-boundary: yes ({ray})");
        }
        None => {
            let _ = writeln!(out, "lagrangian-boundary: no");
        }
    }
    out
}

pub fn walls_text(r: &WallsReport) -> String {
    let mut out = String::new();
    let h = &r.header;
    let _ = writeln!(
        out,
        "v = {}, d = {}, window u in [{}, {}], t <= {}",
        h.v,
        h.d,
        fmt_rat(&h.window.u_min),
        fmt_rat(&h.window.u_max),
        fmt_rat(&h.window.t_max)
    );
    let _ = writeln!(out, "{} walls", r.walls.len());
    for (i, w) in r.walls.iter().enumerate() {
        let wit: Vec<String> = w.classification.witnesses.iter().map(|x| format!("{:?} {}", x.label, x.class)).collect();
        let _ = writeln!(
            out,
            "[{i}] {:?}{} {}; {}",
            w.classification.kind,
            if w.classification.totally_semistable { " (totally semistable)" } else { "" },
            fmt_shape(&w.curve.shape),
            wit.join(", ")
        );
    }
    out
}

pub fn bm_text(r: &BmReport) -> String {
    let mut out = String::new();
    let w: Vec<String> = r.image.w_sigma.iter().map(|x| fmt_rat(&x.0)).collect();
    let _ = writeln!(out, "point u = {}, t = {}", fmt_rat(&r.point.u), fmt_rat(&r.point.t));
    let _ = writeln!(out, "w_sigma = ({})", w.join(", "));
    if let Some([h, b]) = &r.image.ns_coords {
        let sign = if b.0.is_negative() { '-' } else { '+' };
        let _ = writeln!(out, "ns_coords = {} H~ {sign} {} B", fmt_rat(&h.0), fmt_rat(&b.0.abs()));
    }
    if let Some(m) = &r.image.basis_twist {
        if m.0 != BigInt::from(0) {
            let _ = writeln!(out, "basis twisted by exp({}H)", m.0);
        }
    }
    let _ = writeln!(out, "q = {}", fmt_rat(&r.image.q.0));
    if let Some(ray) = &r.ray {
        let _ = writeln!(out, "ray: {ray}");
    }
    if let Some(p) = &r.position {
        let _ = writeln!(out, "chamber: {p}");
    }
    if !r.chamber.is_empty() {
        let sides: Vec<String> = r.chamber.iter().map(|s| format!("{}:{:+}", s.index, s.side)).collect();
        let _ = writeln!(out, "wall sides: {}", sides.join(" "));
    }
    out
}
