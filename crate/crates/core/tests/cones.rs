use num_traits::{Signed, Zero};

use ogrady_walls::classify::{classify_wall, WallKind};
use ogrady_walls::cones::{flopping_candidates, orthogonal_ray, standard_vector, ConeCase, ConeWitness};
use ogrady_walls::{make_wall_lattice, movable_cone, nef_cone, numerical_wall, pairing, MukaiVector, Surface};

fn witness_class(w: &ConeWitness) -> Option<&MukaiVector> {
    match w {
        ConeWitness::Pell { class, .. } | ConeWitness::Flop { class, .. } => Some(class),
        ConeWitness::SquareZero { .. } => None,
    }
}

#[test]
fn nef_inside_movable_up_to_50() {
    for d in 1..=50u64 {
        let nef = nef_cone(d).unwrap();
        let mov = movable_cone(d).unwrap();
        let (kn, km) = (nef.ray_high.slope().unwrap(), mov.ray_high.slope().unwrap());
        let has_sc = !flopping_candidates(d).unwrap().is_empty();
        assert!(kn <= km, "d = {d}");
        assert_eq!(kn == km, !has_sc, "d = {d}");
        assert!(kn.is_positive());
        assert!(!nef.ray_high.q(d).is_negative());
        if mov.case_tag == ConeCase::PerfectSquare {
            assert!(mov.ray_high.q(d).is_zero());
        }
    }
}

#[test]
fn witnesses_are_orthogonal_to_their_rays() {
    let v = standard_vector();
    for d in 1..=50u64 {
        let s = Surface::new(d).unwrap();
        for cone in [nef_cone(d).unwrap(), movable_cone(d).unwrap()] {
            let pre = cone.ray_high.preimage();
            assert!(pairing(&pre, &v, &s).is_zero());
            if let Some(class) = witness_class(&cone.witness) {
                assert_eq!(class.square(&s), (-2).into(), "d = {d}");
                assert!(pairing(&pre, class, &s).is_zero(), "d = {d}");
                assert_eq!(orthogonal_ray(&v, class, d).unwrap(), cone.ray_high);
            }
        }
    }
}

#[test]
fn boundary_witnesses_classify_as_expected() {
    let v = standard_vector();
    for d in 1..=20u64 {
        let s = Surface::new(d).unwrap();
        let check = |class: &MukaiVector, want: fn(WallKind) -> bool| {
            let l = make_wall_lattice(&v, class, &s).unwrap();
            let c = classify_wall(&l, &v, &numerical_wall(&v, class, &s), 200).unwrap();
            assert!(want(c.kind), "d = {d}, class {class}: {:?}", c.kind);
        };
        let nef = nef_cone(d).unwrap();
        if nef.case_tag == ConeCase::SCWall {
            check(witness_class(&nef.witness).unwrap(), |k| k == WallKind::Flopping);
        }
        if let Some(class) = witness_class(&movable_cone(d).unwrap().witness) {
            check(class, WallKind::is_divisorial);
        }
    }
}

#[test]
fn both_flopping_equations_take_the_smaller_slope() {
    let mut both = Vec::new();
    for d in 1..=200u64 {
        let cands = flopping_candidates(d).unwrap();
        let nef = nef_cone(d).unwrap();
        assert_eq!(nef.ambiguous, cands.len() == 2, "d = {d}");
        if let Some(min) = cands.iter().map(|c| c.3.slope().unwrap()).min() {
            assert_eq!(nef.ray_high.slope().unwrap(), min);
        }
        if cands.len() == 2 {
            both.push(d);
        }
    }
    eprintln!("both flopping equations soluble for d in {both:?}");
    assert!(both.contains(&31));
}
