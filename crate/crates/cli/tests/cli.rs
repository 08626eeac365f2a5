use std::process::{Command, Output};

use serde_json::Value;

fn ogwalls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ogwalls")).args(args).env_remove("OGWALLS_CONFIG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn classify_flopping_wall() {
    let v = json(&ogwalls(&["classify", "--d", "1", "--v", "2,2,0", "--u", "1,0,1"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["classification"]["kind"], "Flopping");
    assert_eq!(v["classification"]["totally_semistable"], true);
    let w = &v["classification"]["witnesses"][0];
    assert_eq!((w["label"].as_str(), w["class"].clone()), (Some("SC"), serde_json::json!([2, 1, 1])));
}

#[test]
fn classify_bn_wall() {
    let v = json(&ogwalls(&["classify", "--d", "2", "--v", "2,0,-2", "--u", "3,-2,3"]));
    assert!(v["classification"]["kind"].as_str().unwrap().starts_with("DivisorialBN"));
    let bn: Vec<&Value> = v["classification"]["witnesses"].as_array().unwrap().iter().filter(|w| w["label"] == "BN").collect();
    assert_eq!(bn[0]["class"], serde_json::json!([3, -2, 3]));
}

#[test]
fn classify_degenerate_lattice_exits_2() {
    let o = ogwalls(&["classify", "--d", "1", "--v", "2,0,-2", "--u", "1,-1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotHyperbolic"));
}

#[test]
fn cones_examples() {
    let o = ogwalls(&["cones", "--d", "1", "--format", "text"]);
    let t = stdout(&o);
    assert!(t.contains("mov: <H~, H~-B>") && t.contains("nef: <H~, 3H~-2B>") && t.contains("lagrangian-boundary: yes (H~-B)"));
    let t = stdout(&ogwalls(&["cones", "--d", "2", "--format", "text"]));
    assert!(t.contains("mov: <H~, 3H~-4B>") && t.contains("nef: <H~, H~-B>") && t.contains("lagrangian-boundary: no"));
    let v = json(&ogwalls(&["cones", "--d", "3"]));
    assert_eq!(v["movable"]["ray_high"], v["nef"]["ray_high"]);
    assert_eq!(v["nef"]["ray_high"], serde_json::json!({"coeff_h": 2, "coeff_b": -3}));
}

#[test]
fn walls_svg_has_the_flopping_semicircle() {
    let o = ogwalls(&["walls", "--d", "1", "--v", "2,2,0", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"class="wall flopping" data-center="-0.5" data-radius="1.11803""#));
}

#[test]
fn walls_json_is_twist_equivariant() {
    let a = json(&ogwalls(&["walls", "--d", "1", "--v", "2,2,0", "--rank-bound", "3"]));
    let b = json(&ogwalls(&["walls", "--d", "1", "--v", "2,0,-2", "--rank-bound", "3", "--u-min", "-3", "--u-max", "0"]));
    let centers = |v: &Value| -> Vec<String> {
        v["walls"]
            .as_array()
            .unwrap()
            .iter()
            .map(|w| {
                let s = &w["curve"]["shape"];
                format!("{} {} {}", s["type"], s["center_u"], s["u0"])
            })
            .collect()
    };
    let shifted: Vec<String> = centers(&a)
        .into_iter()
        .map(|c| c.replace("\"-1/2\"", "\"-3/2\"").replace("\"1\"", "\"0\"").replace("\"-1/4\"", "\"-5/4\"").replace("\"-1/6\"", "\"-7/6\""))
        .collect();
    assert_eq!(shifted, centers(&b));
    assert_eq!(b["header"]["window"]["u_min"], "-3");
}

#[test]
fn walls_empty_window_exits_2() {
    let o = ogwalls(&["walls", "--d", "1", "--v", "2,2,0", "--t-max", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("WindowEmpty"));
}

#[test]
fn bm_examples() {
    let v = json(&ogwalls(&["bm", "--d", "1", "--v", "2,0,-2", "--u", "-1/2", "--t", "1"]));
    assert_eq!(v["image"]["w_sigma"], serde_json::json!(["8/65", "-18/65", "8/65"]));
    assert_eq!(v["ray"], serde_json::json!({"coeff_h": 9, "coeff_b": -4}));
    assert_eq!(v["position"], "NefInterior");
    assert_eq!(v["image"]["q"], "8/65");
    let v = json(&ogwalls(&["bm", "--d", "1", "--v", "2,0,-2", "--u", "0", "--t", "1"]));
    assert_eq!(v["ray"], serde_json::json!({"coeff_h": 1, "coeff_b": 0}));
    let v = json(&ogwalls(&["bm", "--d", "1", "--v", "2,0,-2", "--u", "-1", "--t", "1"]));
    assert_eq!(v["ray"], serde_json::json!({"coeff_h": 3, "coeff_b": -2}));
    assert_eq!(v["position"], "NefBoundary");
}

#[test]
fn bm_with_wall_file() {
    let dir = tempfile::tempdir().unwrap();
    let walls = dir.path().join("walls.json");
    let o = ogwalls(&["walls", "--d", "1", "--v", "2,0,-2", "--out", walls.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&ogwalls(&["bm", "--d", "1", "--v", "2,0,-2", "--u", "-1/2", "--t", "1", "--walls", walls.to_str().unwrap()]));
    let sides = v["chamber"].as_array().unwrap();
    assert!(!sides.is_empty());
    assert!(sides.iter().all(|s| s["side"] != 0));
    let t = stdout(&ogwalls(&["bm", "--d", "1", "--v", "2,0,-2", "--u", "0", "--t", "1", "--walls", walls.to_str().unwrap(), "--format", "text"]));
    assert!(t.contains(":+0"));
}

#[test]
fn bm_at_a_zero_of_z_exits_2() {
    let o = ogwalls(&["bm", "--d", "1", "--v", "1,0,1", "--u", "0", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("CentralChargeVanishes"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(ogwalls(&["bogus"]).status.code(), Some(1));
    assert_eq!(ogwalls(&["classify", "--d", "1", "--v", "2,2", "--u", "1,0,1"]).status.code(), Some(1));
    assert_eq!(ogwalls(&["bm", "--d", "1", "--u", "x", "--t", "1"]).status.code(), Some(1));
    assert_eq!(ogwalls(&["cones", "--d", "1", "--format", "svg"]).status.code(), Some(1));
    assert_eq!(ogwalls(&["classify", "--d", "1"]).status.code(), Some(1));
    assert_eq!(ogwalls(&["--help"]).status.code(), Some(0));
    assert_eq!(ogwalls(&["--version"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_2() {
    assert_eq!(ogwalls(&["cones", "--d", "0"]).status.code(), Some(2));
    assert_eq!(ogwalls(&["walls", "--v", "2,1,0"]).status.code(), Some(2));
    let o = ogwalls(&["walls", "--format", "svg", "--out", "/nonexistent-dir/x.svg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# cones\nd = 2\nformat = text\n").unwrap();
    let o = ogwalls(&["cones", "--config", cfg.to_str().unwrap()]);
    assert!(stdout(&o).contains("mov: <H~, 3H~-4B>"));
    // Flags override the file.
    let o = ogwalls(&["cones", "--config", cfg.to_str().unwrap(), "--d", "1"]);
    assert!(stdout(&o).contains("nef: <H~, 3H~-2B>"));
    let o = Command::new(env!("CARGO_BIN_EXE_ogwalls")).args(["cones"]).env("OGWALLS_CONFIG", &cfg).output().unwrap();
    assert!(String::from_utf8(o.stdout).unwrap().contains("d = 2"));
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(ogwalls(&["cones", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn svg_output_is_deterministic() {
    let a = stdout(&ogwalls(&["walls", "--d", "2", "--v", "2,0,-2", "--format", "svg"]));
    let b = stdout(&ogwalls(&["walls", "--d", "2", "--v", "2,0,-2", "--format", "svg"]));
    assert_eq!(a, b);
}
