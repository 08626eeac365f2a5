use ogrady_walls_web::{bm_at_impl, cones_json_impl, walls_svg_impl};
use serde_json::Value;

#[test]
fn walls_of_220() {
    let svg = walls_svg_impl(1, "2,2,0", "-2", "1", "1.5", 4).unwrap();
    assert!(svg.contains(r#"class="wall flopping" data-center="-0.5""#));
    assert!(svg.contains(r#"id="fan""#));
}

#[test]
fn bad_inputs_name_the_error() {
    assert!(walls_svg_impl(1, "2,2,0", "-2", "1", "0", 4).unwrap_err().starts_with("WindowEmpty"));
    assert!(walls_svg_impl(1, "2,2", "-2", "1", "1", 4).unwrap_err().starts_with("Parse"));
    assert!(bm_at_impl(1, "2,0,-2", "0", "0").unwrap_err().starts_with("InvalidSlicePoint"));
    assert!(cones_json_impl(0).unwrap_err().starts_with("InvalidSurface"));
}

#[test]
fn cones_and_bm() {
    let c: Value = serde_json::from_str(&cones_json_impl(2).unwrap()).unwrap();
    assert_eq!(c["movable"]["ray_high"]["coeff_b"], -4);
    let b: Value = serde_json::from_str(&bm_at_impl(1, "2,0,-2", "-1/2", "1").unwrap()).unwrap();
    assert_eq!(b["position"], "NefInterior");
}
