//! Deterministic SVG 1.1 rendering of wall diagrams and cone fans.
//!
//! Geometry is computed in `f64` from exact data and printed with six
//! significant digits, so identical inputs give byte-identical output.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::arith::{int_to_f64, to_f64};
use crate::classify::WallKind;
use crate::cones::{movable_cone, nef_cone, ConeRay};
use crate::mukai::{normal_form_twist, Surface};
use crate::report::WallsReport;
use crate::slice::{spherical_holes, WallShape};
use crate::Result;

const PLANE_W: f64 = 520.0;
const PLANE_H: f64 = 360.0;
const MARGIN: f64 = 40.0;
const FAN_W: f64 = 320.0;

/// Formats with six significant digits and no trailing zeros.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    let s = format!("{rounded}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn kind_color(kind: WallKind) -> &'static str {
    match kind {
        WallKind::DivisorialBN | WallKind::DivisorialBNandLGU => "#1f5fbf",
        WallKind::Flopping => "#c8281e",
        WallKind::Fake => "#8c8c8c",
        WallKind::NotAWall | WallKind::Unresolved => "#c0c0c0",
    }
}

pub fn kind_class(kind: WallKind) -> &'static str {
    match kind {
        WallKind::DivisorialBN | WallKind::DivisorialBNandLGU => "divisorial",
        WallKind::Flopping => "flopping",
        WallKind::Fake => "fake",
        WallKind::NotAWall => "not-a-wall",
        WallKind::Unresolved => "unresolved",
    }
}

/// `3H~-2B` rendered with combining tilde, primed in a twisted basis.
pub fn ray_label(ray: &ConeRay, twisted: bool) -> String {
    let s = ray.to_string().replace('-', "\u{2212}");
    if twisted {
        s.replace("H~", "H\u{303}\u{2032}").replace('B', "B\u{2032}")
    } else {
        s.replace("H~", "H\u{303}")
    }
}

struct Plane {
    u_min: f64,
    scale: f64,
    x0: f64,
    y0: f64,
}

impl Plane {
    fn x(&self, u: f64) -> f64 {
        self.x0 + (u - self.u_min) * self.scale
    }
    fn y(&self, t: f64) -> f64 {
        self.y0 - t * self.scale
    }
}

/// Renders the walls of a report in the upper half-plane, with an optional
/// cone fan panel when `v` twists to `(2,0,−2)`.
pub fn render_walls(report: &WallsReport, with_fan: bool) -> Result<String> {
    let h = &report.header;
    let s = Surface::new(h.d)?;
    let twist = normal_form_twist(&h.v, &s);
    let fan = with_fan && twist.is_some();
    let (u_min, u_max, t_max) = (to_f64(&h.window.u_min), to_f64(&h.window.u_max), to_f64(&h.window.t_max));
    let scale = (PLANE_W / (u_max - u_min)).min(PLANE_H / t_max);
    let plane = Plane { u_min, scale, x0: MARGIN, y0: MARGIN + t_max * scale };
    let (pw, ph) = ((u_max - u_min) * scale, t_max * scale);
    let width = 2.0 * MARGIN + pw + if fan { FAN_W } else { 0.0 };
    let height = 2.0 * MARGIN + ph + 60.0;

    let mut o = String::new();
    let _ = writeln!(o, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    );
    let _ = writeln!(o, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        o,
        r#"<defs><clipPath id="plane"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>"#,
        num(MARGIN),
        num(MARGIN),
        num(pw),
        num(ph)
    );
    let _ = writeln!(
        o,
        r#"<text x="{}" y="{}" font-family="serif" font-size="14">v = {}, d = {}</text>"#,
        num(MARGIN),
        num(MARGIN - 16.0),
        h.v,
        h.d
    );

    // Axes and integer ticks.
    let _ = writeln!(o, r#"<g id="axes" stroke="black" stroke-width="1" fill="none">"#);
    let _ = writeln!(o, r##"<rect x="{}" y="{}" width="{}" height="{}" stroke="#999999"/>"##, num(MARGIN), num(MARGIN), num(pw), num(ph));
    let _ = writeln!(o, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(MARGIN), num(plane.y0), num(MARGIN + pw), num(plane.y0));
    let _ = writeln!(o, "</g>");
    let _ = writeln!(o, r#"<g id="ticks" font-family="serif" font-size="11" text-anchor="middle">"#);
    let mut k = u_min.ceil() as i64;
    while (k as f64) <= u_max {
        let x = plane.x(k as f64);
        let _ = writeln!(o, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, num(x), num(plane.y0), num(x), num(plane.y0 + 5.0));
        let _ = writeln!(o, r#"<text x="{}" y="{}">{}</text>"#, num(x), num(plane.y0 + 18.0), k);
        k += 1;
    }
    let _ = writeln!(o, "</g>");

    // Walls.
    let _ = writeln!(o, r#"<g id="walls" clip-path="url(#plane)" fill="none" stroke-width="2">"#);
    for (i, w) in report.walls.iter().enumerate() {
        let kind = w.classification.kind;
        let dash = if matches!(kind, WallKind::Fake | WallKind::NotAWall | WallKind::Unresolved) { r#" stroke-dasharray="6 4""# } else { "" };
        match &w.curve.shape {
            WallShape::Circle { center_u, radius_sq } => {
                let c = to_f64(center_u);
                let r = to_f64(radius_sq).sqrt();
                let rx = r * scale;
                let _ = writeln!(
                    o,
                    r#"<path id="wall-{i}" class="wall {}" data-center="{}" data-radius="{}" d="M {} {} A {} {} 0 0 1 {} {}" stroke="{}"{dash}/>"#,
                    kind_class(kind),
                    num(c),
                    num(r),
                    num(plane.x(c - r)),
                    num(plane.y0),
                    num(rx),
                    num(rx),
                    num(plane.x(c + r)),
                    num(plane.y0),
                    kind_color(kind)
                );
            }
            WallShape::VerticalLine { u0 } => {
                let x = plane.x(to_f64(u0));
                let _ = writeln!(
                    o,
                    r#"<line id="wall-{i}" class="wall {}" data-u="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}"{dash}/>"#,
                    kind_class(kind),
                    num(to_f64(u0)),
                    num(x),
                    num(plane.y0),
                    num(x),
                    num(MARGIN),
                    kind_color(kind)
                );
            }
            WallShape::Empty | WallShape::Degenerate => {}
        }
    }
    let _ = writeln!(o, "</g>");

    // Spherical holes.
    let _ = writeln!(o, r#"<g id="holes" fill="black">"#);
    for (u, t_sq) in spherical_holes(&s, &h.window, h.bounds.rank_bound) {
        let (x, y) = (plane.x(to_f64(&u)), plane.y(to_f64(&t_sq).sqrt()));
        let _ = writeln!(o, r#"<circle cx="{}" cy="{}" r="2.5"/>"#, num(x), num(y));
    }
    let _ = writeln!(o, "</g>");

    // Legend.
    let ly = plane.y0 + 40.0;
    let _ = writeln!(o, r#"<g id="legend" font-family="serif" font-size="12">"#);
    let entries = [(WallKind::DivisorialBN, "divisorial"), (WallKind::Flopping, "flopping"), (WallKind::Fake, "fake"), (WallKind::NotAWall, "numerical only")];
    for (j, (kind, label)) in entries.iter().enumerate() {
        let x = MARGIN + 120.0 * j as f64;
        let dash = if j >= 2 { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            o,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"{dash}/><text x="{}" y="{}">{label}</text>"#,
            num(x),
            num(ly),
            num(x + 24.0),
            num(ly),
            kind_color(*kind),
            num(x + 30.0),
            num(ly + 4.0)
        );
    }
    let _ = writeln!(o, "</g>");

    if let (true, Some(m)) = (fan, twist) {
        render_fan(&mut o, h.d, !m.is_zero(), MARGIN + pw + MARGIN, MARGIN, FAN_W - MARGIN, ph)?;
    }
    let _ = writeln!(o, "</svg>");
    Ok(o)
}

/// Rays `a·H̃ + b·B` drawn as `(a·√(2d), −b·√2)` so that angles reflect `q`.
fn fan_direction(ray: &ConeRay, d: u64) -> (f64, f64) {
    let x = int_to_f64(&ray.coeff_h) * ((2 * d) as f64).sqrt();
    let y = -int_to_f64(&ray.coeff_b) * 2f64.sqrt();
    let n = (x * x + y * y).sqrt();
    (x / n, y / n)
}

fn render_fan(o: &mut String, d: u64, twisted: bool, x0: f64, y0: f64, w: f64, h: f64) -> Result<()> {
    let nef = nef_cone(d)?.ray_high;
    let mov = movable_cone(d)?.ray_high;
    let h_tilde = ConeRay::h_tilde();
    let len = w.min(h) * 0.85;
    let (ox, oy) = (x0, y0 + h);
    let tip = |r: &ConeRay| {
        let (dx, dy) = fan_direction(r, d);
        (ox + dx * len, oy - dy * len)
    };
    let (hx, hy) = tip(&h_tilde);
    let (nx, ny) = tip(&nef);
    let (mx, my) = tip(&mov);
    let _ = writeln!(o, r#"<g id="fan" font-family="serif" font-size="12">"#);
    let _ = writeln!(
        o,
        r##"<path class="chamber movable" d="M {} {} L {} {} A {} {} 0 0 0 {} {} Z" fill="#f6e7b0"/>"##,
        num(ox),
        num(oy),
        num(nx),
        num(ny),
        num(len),
        num(len),
        num(mx),
        num(my)
    );
    let _ = writeln!(
        o,
        r##"<path class="chamber nef" d="M {} {} L {} {} A {} {} 0 0 0 {} {} Z" fill="#cfe8c6"/>"##,
        num(ox),
        num(oy),
        num(hx),
        num(hy),
        num(len),
        num(len),
        num(nx),
        num(ny)
    );
    for (ray, class) in [(&h_tilde, "ray common"), (&nef, "ray nef"), (&mov, "ray movable")] {
        let (x, y) = tip(ray);
        let _ = writeln!(
            o,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/><text x="{}" y="{}">{}</text>"#,
            num(ox),
            num(oy),
            num(x),
            num(y),
            num(x + 4.0),
            num(y - 4.0),
            ray_label(ray, twisted)
        );
    }
    let _ = writeln!(o, r#"<text x="{}" y="{}">Nef</text>"#, num(ox + 0.45 * (hx + nx - 2.0 * ox) / 2.0), num(oy + 0.45 * (hy + ny - 2.0 * oy) / 2.0));
    let _ = writeln!(o, "</g>");
    Ok(())
}
