//! Saturated rank-two sublattices of the Mukai lattice containing `v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::serde_exact::Int;
use crate::arith::{ext_gcd, gcd3};
use crate::mukai::{cross, pairing, primitive_decompose, MukaiVector, Surface};
use crate::{Error, Result};

/// A primitive rank-two hyperbolic lattice `H ⊂ H*_alg(X, Z)` with `v ∈ H`.
///
/// The basis is adapted to `v`: `e1` is the primitive part of `v`, and `e2`
/// is reduced against it, so `v_coords = (m, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallLattice {
    pub basis: [MukaiVector; 2],
    pub gram: [[BigInt; 2]; 2],
    pub v_coords: [BigInt; 2],
    pub surface: Surface,
    normal: [BigInt; 3],
}

/// Serializable view of a lattice (the surface is carried by the report header).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeData {
    pub basis: [MukaiVector; 2],
    pub gram: [[Int; 2]; 2],
    pub v_coords: [Int; 2],
}

impl WallLattice {
    pub fn determinant(&self) -> BigInt {
        &self.gram[0][0] * &self.gram[1][1] - &self.gram[0][1] * &self.gram[1][0]
    }

    /// Canonical key of the saturated lattice: the primitive, sign-normalised
    /// coordinate normal vector of its rational span.
    pub fn key(&self) -> &[BigInt; 3] {
        &self.normal
    }

    /// `x·e1 + y·e2`.
    pub fn element(&self, x: &BigInt, y: &BigInt) -> MukaiVector {
        &self.basis[0].scale(x) + &self.basis[1].scale(y)
    }

    /// Integral coordinates of `u` in the basis, if `u` lies in the lattice.
    pub fn coords(&self, u: &MukaiVector) -> Option<[BigInt; 2]> {
        coords_in(&self.basis, u)
    }

    /// Quadratic form in basis coordinates.
    pub fn square_of(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let g = &self.gram;
        &g[0][0] * x * x + BigInt::from(2) * &g[0][1] * x * y + &g[1][1] * y * y
    }

    /// Pairings `((e1, w), (e2, w))`.
    pub fn pairings_with(&self, w: &MukaiVector) -> [BigInt; 2] {
        [pairing(&self.basis[0], w, &self.surface), pairing(&self.basis[1], w, &self.surface)]
    }

    pub fn data(&self) -> LatticeData {
        LatticeData {
            basis: self.basis.clone(),
            gram: self.gram.clone().map(|row| row.map(Int)),
            v_coords: self.v_coords.clone().map(Int),
        }
    }
}

/// Solves `u = x·b1 + y·b2` over the integers.
pub fn coords_in(basis: &[MukaiVector; 2], u: &MukaiVector) -> Option<[BigInt; 2]> {
    let b1 = basis[0].components();
    let b2 = basis[1].components();
    let uu = u.components();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let det = b1[i] * b2[j] - b1[j] * b2[i];
        if det.is_zero() {
            continue;
        }
        let xn = uu[i] * b2[j] - uu[j] * b2[i];
        let yn = b1[i] * uu[j] - b1[j] * uu[i];
        let (x, rx) = xn.div_rem(&det);
        let (y, ry) = yn.div_rem(&det);
        if !rx.is_zero() || !ry.is_zero() {
            return None;
        }
        let back = &basis[0].scale(&x) + &basis[1].scale(&y);
        return (back == *u).then_some([x, y]);
    }
    None
}

fn normalize_sign3(mut n: [BigInt; 3]) -> [BigInt; 3] {
    if let Some(first) = n.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            n = n.map(|x| -x);
        }
    }
    n
}

/// Basis of `{x ∈ Z^3 : n·x = 0}` for a nonzero `n`, by unimodular column
/// reduction of the row `n`.
fn kernel_basis(n: &[BigInt; 3]) -> [MukaiVector; 2] {
    let mut row = n.clone();
    let mut cols: [[BigInt; 3]; 3] = [
        [BigInt::one(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::one()],
    ];
    // Fold entries 1 and 2 into entry 0 with Bezout steps.
    for k in 1..3 {
        if row[k].is_zero() {
            continue;
        }
        let (g, s, t) = ext_gcd(&row[0], &row[k]);
        let p = &row[0] / &g;
        let q = &row[k] / &g;
        // New col0 = s·col0 + t·colk, new colk = −q·col0 + p·colk (determinant one).
        let c0 = cols[0].clone();
        let ck = cols[k].clone();
        for i in 0..3 {
            cols[0][i] = &s * &c0[i] + &t * &ck[i];
            cols[k][i] = -&q * &c0[i] + &p * &ck[i];
        }
        row[0] = g;
        row[k] = BigInt::zero();
    }
    let to_vec = |c: &[BigInt; 3]| MukaiVector::new(c[0].clone(), c[1].clone(), c[2].clone());
    [to_vec(&cols[1]), to_vec(&cols[2])]
}

/// The saturation of `span{v, u}` with its Gram matrix.
pub fn make_wall_lattice(v: &MukaiVector, u: &MukaiVector, s: &Surface) -> Result<WallLattice> {
    let n = cross(v, u);
    if n.iter().all(Zero::is_zero) {
        return Err(Error::NotRankTwo);
    }
    let g = gcd3(&n[0], &n[1], &n[2]);
    let normal = normalize_sign3(n.map(|x| x / &g));
    let raw = kernel_basis(&normal);

    let dec = primitive_decompose(v)?;
    let e1 = dec.primitive;
    let [alpha, beta] = coords_in(&raw, &e1).ok_or_else(|| Error::VectorNotInLattice(e1.to_string()))?;
    // gcd(alpha, beta) = 1 because e1 is primitive; complete to a unimodular basis.
    let (_, x, y) = ext_gcd(&alpha, &beta);
    let mut e2 = &raw[0].scale(&(-&y)) + &raw[1].scale(&x);
    e2 = reduce_against(&e1, e2, s);

    let basis = [e1, e2];
    let gram = gram_of(&basis, s);
    let det = &gram[0][0] * &gram[1][1] - &gram[0][1] * &gram[1][0];
    if !det.is_negative() {
        return Err(Error::NotHyperbolic(det.to_string()));
    }
    Ok(WallLattice { basis, gram, v_coords: [dec.m, BigInt::zero()], surface: s.clone(), normal })
}

fn gram_of(basis: &[MukaiVector; 2], s: &Surface) -> [[BigInt; 2]; 2] {
    let g01 = pairing(&basis[0], &basis[1], s);
    [[basis[0].square(s), g01.clone()], [g01, basis[1].square(s)]]
}

/// Replaces `e2` by `±(e2 − k·e1)` so that `0 <= (e2, e1) <= |e1^2|/2`, with a
/// coordinate sign convention when the pairing vanishes.
fn reduce_against(e1: &MukaiVector, mut e2: MukaiVector, s: &Surface) -> MukaiVector {
    let n = e1.square(s);
    if !n.is_zero() {
        let p = pairing(&e2, e1, s);
        // k = round(p / n), ties toward the smaller |remainder| with nonnegative sign.
        let k = {
            let two_n = BigInt::from(2) * &n;
            (BigInt::from(2) * &p + &n.abs()).div_floor(&two_n.abs()) * n.signum()
        };
        e2 = &e2 - &e1.scale(&k);
    }
    let p = pairing(&e2, e1, s);
    let flip = if p.is_zero() {
        e2.components().into_iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative())
    } else {
        p.is_negative()
    };
    if flip {
        -e2
    } else {
        e2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mv(r: i64, c: i64, a: i64) -> MukaiVector {
        MukaiVector::new(r, c, a)
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Same Z-span: each basis lies in the other's span.
    fn same_lattice(l: &WallLattice, other: &[MukaiVector; 2]) -> bool {
        other.iter().all(|w| l.coords(w).is_some()) && l.basis.iter().all(|w| coords_in(other, w).is_some())
    }

    #[test]
    fn saturation_adds_half_of_v() {
        let s = Surface::new(1).unwrap();
        let l = make_wall_lattice(&mv(2, 2, 0), &mv(1, 0, 1), &s).unwrap();
        assert!(same_lattice(&l, &[mv(1, 1, 0), mv(1, 0, 1)]));
        assert_eq!(l.determinant(), b(-5));
        // [[2,-1],[-1,-2]] in the basis {(1,1,0),(1,0,1)}
        let g = gram_of(&[mv(1, 1, 0), mv(1, 0, 1)], &s);
        assert_eq!(g, [[b(2), b(-1)], [b(-1), b(-2)]]);
        assert!(l.coords(&mv(2, 1, 1)).is_some());
        assert!(coords_in(&[mv(2, 2, 0), mv(1, 0, 1)], &mv(2, 1, 1)).is_none());
        assert_eq!(l.element(&l.v_coords[0], &l.v_coords[1]), mv(2, 2, 0));
    }

    #[test]
    fn rank_one_twisted_lattice() {
        let s = Surface::new(1).unwrap();
        let l = make_wall_lattice(&mv(2, 0, -2), &mv(1, 0, 1), &s).unwrap();
        assert!(same_lattice(&l, &[mv(1, 0, 0), mv(0, 0, 1)]));
        assert_eq!(gram_of(&[mv(1, 0, 0), mv(0, 0, 1)], &s), [[b(0), b(-1)], [b(-1), b(0)]]);
        assert_eq!(l.determinant(), b(-1));
    }

    #[test]
    fn degenerate_and_proportional() {
        let s = Surface::new(1).unwrap();
        assert!(matches!(make_wall_lattice(&mv(2, 0, -2), &mv(1, -1, 1), &s), Err(Error::NotHyperbolic(_))));
        assert_eq!(make_wall_lattice(&mv(2, 2, 0), &mv(1, 1, 0), &s), Err(Error::NotRankTwo));
    }

    #[test]
    fn membership_checks() {
        let s = Surface::new(2).unwrap();
        let l = make_wall_lattice(&mv(2, 0, -2), &mv(3, -2, 3), &s).unwrap();
        assert!(l.coords(&mv(3, -2, 3)).is_some());
        assert!(l.coords(&mv(0, 1, 0)).is_none());
    }

    fn minors_gcd(basis: &[MukaiVector; 2]) -> BigInt {
        let n = cross(&basis[0], &basis[1]);
        gcd3(&n[0], &n[1], &n[2])
    }

    proptest! {
        #[test]
        fn saturated_and_contains_generators(
            r in -6i64..6, c in -6i64..6, a in -6i64..6,
            r2 in -6i64..6, c2 in -6i64..6, a2 in -6i64..6, d in 1u64..5,
        ) {
            let s = Surface::new(d).unwrap();
            let (v, u) = (mv(r, c, a), mv(r2, c2, a2));
            match make_wall_lattice(&v, &u, &s) {
                Ok(l) => {
                    prop_assert_eq!(minors_gcd(&l.basis), BigInt::one());
                    prop_assert!(l.coords(&v).is_some());
                    prop_assert!(l.coords(&u).is_some());
                    prop_assert_eq!(l.element(&l.v_coords[0], &l.v_coords[1]), v.clone());
                    prop_assert!(l.determinant().is_negative());
                    // Key depends only on the span.
                    let w = &v.scale(&b(3)) + &u.scale(&b(-2));
                    if let Ok(l2) = make_wall_lattice(&v, &w, &s) {
                        prop_assert_eq!(l2.key(), l.key());
                        prop_assert_eq!(l2.basis, l.basis);
                    }
                }
                Err(Error::NotRankTwo) => prop_assert!(v.is_proportional(&u)),
                Err(Error::NotHyperbolic(_)) => {}
                Err(Error::ZeroVector) => prop_assert!(v.is_zero()),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
