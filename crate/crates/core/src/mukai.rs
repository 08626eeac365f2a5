//! The algebraic Mukai lattice `Z ⊕ Z·H ⊕ Z` of a K3 surface with
//! `Pic(X) = Z·H`, `H^2 = 2d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::serde_exact::Int;
use crate::arith::gcd3;
use crate::{Error, Result};

/// The polarised surface, determined by `d = H^2 / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surface {
    d: u64,
    d_big: BigInt,
}

impl Surface {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSurface(d.to_string()));
        }
        Ok(Self { d, d_big: BigInt::from(d) })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn d_big(&self) -> &BigInt {
        &self.d_big
    }

    /// `H^2 = 2d`.
    pub fn h_square(&self) -> BigInt {
        &self.d_big * 2
    }
}

/// A Mukai vector `(r, c·H, a)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MukaiVector {
    pub r: BigInt,
    pub c: BigInt,
    pub a: BigInt,
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, c: impl Into<BigInt>, a: impl Into<BigInt>) -> Self {
        Self { r: r.into(), c: c.into(), a: a.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.c.is_zero() && self.a.is_zero()
    }

    pub fn components(&self) -> [&BigInt; 3] {
        [&self.r, &self.c, &self.a]
    }

    pub fn square(&self, s: &Surface) -> BigInt {
        pairing(self, self, s)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { r: &self.r * k, c: &self.c * k, a: &self.a * k }
    }

    /// True when `self` and `other` are linearly dependent over `Q`.
    pub fn is_proportional(&self, other: &Self) -> bool {
        cross(self, other).iter().all(Zero::is_zero)
    }
}

/// Coordinate cross product in `Z^3` (independent of the Mukai pairing).
pub(crate) fn cross(x: &MukaiVector, y: &MukaiVector) -> [BigInt; 3] {
    [
        &x.c * &y.a - &x.a * &y.c,
        &x.a * &y.r - &x.r * &y.a,
        &x.r * &y.c - &x.c * &y.r,
    ]
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.c, self.a)
    }
}

impl FromStr for MukaiVector {
    type Err = Error;

    /// Parses `r,c,a`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected r,c,a but got {s:?}")));
        }
        let mut it = parts.iter().map(|p| {
            p.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {p:?} in {s:?}")))
        });
        let (r, c, a) = (it.next().unwrap()?, it.next().unwrap()?, it.next().unwrap()?);
        Ok(Self { r, c, a })
    }
}

impl Serialize for MukaiVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [Int(self.r.clone()), Int(self.c.clone()), Int(self.a.clone())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for MukaiVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [Int(r), Int(c), Int(a)] = <[Int; 3]>::deserialize(d)?;
        Ok(Self { r, c, a })
    }
}

impl Neg for MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        MukaiVector { r: -self.r, c: -self.c, a: -self.a }
    }
}

impl Neg for &MukaiVector {
    type Output = MukaiVector;
    fn neg(self) -> MukaiVector {
        -self.clone()
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, o: &MukaiVector) -> MukaiVector {
        MukaiVector { r: &self.r + &o.r, c: &self.c + &o.c, a: &self.a + &o.a }
    }
}

impl Sub for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, o: &MukaiVector) -> MukaiVector {
        MukaiVector { r: &self.r - &o.r, c: &self.c - &o.c, a: &self.a - &o.a }
    }
}

impl Mul<&MukaiVector> for &BigInt {
    type Output = MukaiVector;
    fn mul(self, v: &MukaiVector) -> MukaiVector {
        v.scale(self)
    }
}

/// The Mukai pairing `((r,c,a),(r',c',a')) = 2d·c·c' − r·a' − a·r'`.
pub fn pairing(x: &MukaiVector, y: &MukaiVector, s: &Surface) -> BigInt {
    s.h_square() * &x.c * &y.c - &x.r * &y.a - &x.a * &y.r
}

/// `v = m · v_p` with `m > 0` and `v_p` primitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveDecomposition {
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub m: BigInt,
    pub primitive: MukaiVector,
}

pub fn primitive_decompose(v: &MukaiVector) -> Result<PrimitiveDecomposition> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let m = gcd3(&v.r, &v.c, &v.a).abs();
    let primitive = MukaiVector { r: &v.r / &m, c: &v.c / &m, a: &v.a / &m };
    Ok(PrimitiveDecomposition { m, primitive })
}

/// Divisibility two with a primitive part of square two.
pub fn is_ogrady_type(v: &MukaiVector, s: &Surface) -> Result<bool> {
    let dec = primitive_decompose(v)?;
    Ok(dec.m == BigInt::from(2) && dec.primitive.square(s) == BigInt::from(2))
}

/// Multiplication by `exp(m·H) = (1, m·H, d·m^2)`.
pub fn exp_twist(v: &MukaiVector, m: &BigInt, s: &Surface) -> MukaiVector {
    let d = s.d_big();
    MukaiVector {
        r: v.r.clone(),
        c: &v.c + &v.r * m,
        a: &v.a + BigInt::from(2) * d * m * &v.c + d * m * m * &v.r,
    }
}

/// Cohomological action of the spherical twist along a `(−2)`-class:
/// `x ↦ x + (x, s)·s`.
pub fn spherical_reflect(x: &MukaiVector, sph: &MukaiVector, s: &Surface) -> Result<MukaiVector> {
    let sq = sph.square(s);
    if sq != BigInt::from(-2) {
        return Err(Error::NotSpherical(sph.to_string(), sq.to_string()));
    }
    let k = pairing(x, sph, s);
    Ok(x + &sph.scale(&k))
}

/// Twist amount `m` with `exp_twist(v, m) = (2, 0, −2)`, if it exists.
pub fn normal_form_twist(v: &MukaiVector, s: &Surface) -> Option<BigInt> {
    if v.r != BigInt::from(2) || v.c.is_odd() {
        return None;
    }
    let m = -(&v.c / BigInt::from(2));
    (exp_twist(v, &m, s) == MukaiVector::new(2, 0, -2)).then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mv(r: i64, c: i64, a: i64) -> MukaiVector {
        MukaiVector::new(r, c, a)
    }

    fn surf(d: u64) -> Surface {
        Surface::new(d).unwrap()
    }

    #[test]
    fn golden_pairings() {
        let s = surf(1);
        assert_eq!(pairing(&mv(2, 0, -2), &mv(2, 0, -2), &s), BigInt::from(8));
        assert_eq!(pairing(&mv(2, -1, 1), &mv(2, -1, 1), &s), BigInt::from(-2));
        assert_eq!(pairing(&mv(2, -3, 2), &mv(2, 0, -2), &s), BigInt::zero());
        assert_eq!(pairing(&mv(2, -3, 2), &mv(2, -1, 1), &s), BigInt::zero());
        for d in 1..6 {
            assert_eq!(pairing(&mv(1, 0, -1), &mv(1, 0, -1), &surf(d)), BigInt::from(2));
        }
    }

    #[test]
    fn zero_surface_rejected() {
        assert!(matches!(Surface::new(0), Err(Error::InvalidSurface(_))));
    }

    #[test]
    fn decompositions() {
        let dec = primitive_decompose(&mv(2, 0, -2)).unwrap();
        assert_eq!((dec.m, dec.primitive), (BigInt::from(2), mv(1, 0, -1)));
        let dec = primitive_decompose(&mv(1, 0, 1)).unwrap();
        assert_eq!((dec.m, dec.primitive), (BigInt::from(1), mv(1, 0, 1)));
        let dec = primitive_decompose(&mv(4, -6, 2)).unwrap();
        assert_eq!((dec.m, dec.primitive), (BigInt::from(2), mv(2, -3, 1)));
        let dec = primitive_decompose(&mv(-4, 0, 0)).unwrap();
        assert_eq!((dec.m, dec.primitive), (BigInt::from(4), mv(-1, 0, 0)));
        assert_eq!(primitive_decompose(&mv(0, 0, 0)), Err(Error::ZeroVector));
    }

    #[test]
    fn ogrady_type() {
        let s = surf(1);
        assert!(is_ogrady_type(&mv(2, 0, -2), &s).unwrap());
        assert!(is_ogrady_type(&mv(2, 2, 0), &s).unwrap());
        assert!(!is_ogrady_type(&mv(3, 0, -3), &s).unwrap());
        assert!(!is_ogrady_type(&mv(2, 0, 2), &s).unwrap());
        assert_eq!(is_ogrady_type(&mv(0, 0, 0), &s), Err(Error::ZeroVector));
    }

    #[test]
    fn twists() {
        let s = surf(1);
        assert_eq!(exp_twist(&mv(2, 0, -2), &BigInt::from(1), &s), mv(2, 2, 0));
        assert_eq!(exp_twist(&mv(7, -3, 5), &BigInt::zero(), &surf(3)), mv(7, -3, 5));
        let t = exp_twist(&mv(1, 0, 1), &BigInt::from(1), &s);
        assert_eq!(t, mv(1, 1, 2));
        // 2·1·1 − 1·2 − 2·1 = −2
        assert_eq!(t.square(&s), BigInt::from(-2));
        assert_eq!(normal_form_twist(&mv(2, 2, 0), &s), Some(BigInt::from(-1)));
        assert_eq!(normal_form_twist(&mv(2, 1, 0), &s), None);
        assert_eq!(normal_form_twist(&mv(0, 2, -2), &s), None);
    }

    #[test]
    fn reflections() {
        let s = surf(1);
        let o = mv(1, 0, 1);
        let img = spherical_reflect(&mv(1, -2, 2), &o, &s).unwrap();
        assert_eq!(img, mv(-2, -2, -1));
        assert_eq!(-img, mv(2, 2, 1));
        assert_eq!(spherical_reflect(&o, &o, &s).unwrap(), -&o);
        let v = mv(2, 0, -2);
        let back = spherical_reflect(&spherical_reflect(&v, &o, &s).unwrap(), &o, &s).unwrap();
        assert_eq!(back, v);
        assert!(matches!(spherical_reflect(&v, &v, &s), Err(Error::NotSpherical(..))));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,0,-2".parse::<MukaiVector>().unwrap(), mv(2, 0, -2));
        assert_eq!("(1, -2, 2)".parse::<MukaiVector>().unwrap(), mv(1, -2, 2));
        assert!("1,2".parse::<MukaiVector>().is_err());
        assert!("1,x,2".parse::<MukaiVector>().is_err());
        assert_eq!(mv(2, -3, 2).to_string(), "(2,-3,2)");
    }

    fn arb_vec() -> impl Strategy<Value = MukaiVector> {
        (-50i64..50, -50i64..50, -50i64..50).prop_map(|(r, c, a)| mv(r, c, a))
    }

    proptest! {
        #[test]
        fn pairing_symmetric_and_even(x in arb_vec(), y in arb_vec(), d in 1u64..20) {
            let s = surf(d);
            prop_assert_eq!(pairing(&x, &y, &s), pairing(&y, &x, &s));
            prop_assert!(x.square(&s).is_even());
        }

        #[test]
        fn pairing_bilinear(x in arb_vec(), y in arb_vec(), z in arb_vec(), k in -9i64..9, d in 1u64..10) {
            let s = surf(d);
            let k = BigInt::from(k);
            let lhs = pairing(&(&x + &z.scale(&k)), &y, &s);
            prop_assert_eq!(lhs, pairing(&x, &y, &s) + &k * pairing(&z, &y, &s));
        }

        #[test]
        fn twist_is_isometric_group_action(x in arb_vec(), y in arb_vec(), m1 in -6i64..6, m2 in -6i64..6, d in 1u64..10) {
            let s = surf(d);
            let (m1, m2) = (BigInt::from(m1), BigInt::from(m2));
            let tx = exp_twist(&x, &m1, &s);
            prop_assert_eq!(pairing(&tx, &exp_twist(&y, &m1, &s), &s), pairing(&x, &y, &s));
            prop_assert_eq!(exp_twist(&tx, &m2, &s), exp_twist(&x, &(&m1 + &m2), &s));
        }

        #[test]
        fn reflection_is_isometric_involution(x in arb_vec(), y in arb_vec(), c in -5i64..5, d in 1u64..10) {
            let s = surf(d);
            // (1, c, d·c^2 + 1) is spherical for every c.
            let sph = mv(1, c, d as i64 * c * c + 1);
            prop_assert_eq!(sph.square(&s), BigInt::from(-2));
            let rx = spherical_reflect(&x, &sph, &s).unwrap();
            let ry = spherical_reflect(&y, &sph, &s).unwrap();
            prop_assert_eq!(pairing(&rx, &ry, &s), pairing(&x, &y, &s));
            prop_assert_eq!(spherical_reflect(&rx, &sph, &s).unwrap(), x);
        }

        #[test]
        fn decomposition_scales(x in arb_vec(), k in 1i64..20) {
            prop_assume!(!x.is_zero());
            let k = BigInt::from(k);
            let base = primitive_decompose(&x).unwrap();
            let scaled = primitive_decompose(&x.scale(&k)).unwrap();
            prop_assert_eq!(scaled.m, &k * &base.m);
            prop_assert_eq!(scaled.primitive.scale(&base.m.clone()).scale(&k), x.scale(&k));
            prop_assert!(gcd3(&base.primitive.r, &base.primitive.c, &base.primitive.a) == BigInt::from(1));
        }
    }
}
