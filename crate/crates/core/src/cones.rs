//! Movable and nef cones of `M = M_H(2,0,−2)` in the basis
//! `H̃ = θ(0,−H,0)`, `B = θ(−1,0,−1)` of `NS(M)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::serde_exact::Int;
use crate::mukai::{pairing, MukaiVector, Surface};
use crate::quadratic::{pell_fundamental, pell_general, PellSolution};
use crate::{Error, Result};

/// The O'Grady vector in normal form.
pub fn standard_vector() -> MukaiVector {
    MukaiVector::new(2, 0, -2)
}

/// Preimages of the NS basis in `v^⊥` and the Gram matrix of `q` on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSBasis {
    pub h_tilde_preimage: MukaiVector,
    pub b_preimage: MukaiVector,
    pub gram_ns: [[BigInt; 2]; 2],
}

pub fn ns_gram(d: u64) -> Result<NSBasis> {
    let s = Surface::new(d)?;
    let h = MukaiVector::new(0, -1, 0);
    let b = MukaiVector::new(-1, 0, -1);
    let hb = pairing(&h, &b, &s);
    let gram_ns = [[h.square(&s), hb.clone()], [hb, b.square(&s)]];
    Ok(NSBasis { h_tilde_preimage: h, b_preimage: b, gram_ns })
}

/// Primitive integral ray `coeff_h·H̃ + coeff_b·B`, oriented with `coeff_h >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeRay {
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub coeff_h: BigInt,
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub coeff_b: BigInt,
}

impl ConeRay {
    /// Normalises any nonzero pair to a primitive ray.
    pub fn new(h: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        let (mut h, mut b) = (h.into(), b.into());
        let g = h.gcd(&b);
        assert!(!g.is_zero(), "zero ray");
        h /= &g;
        b /= &g;
        if h.is_negative() || (h.is_zero() && b.is_negative()) {
            h = -h;
            b = -b;
        }
        Self { coeff_h: h, coeff_b: b }
    }

    pub fn h_tilde() -> Self {
        Self::new(1, 0)
    }

    /// `q(aH̃ + bB) = 2d·a^2 − 2·b^2`.
    pub fn q(&self, d: u64) -> BigInt {
        BigInt::from(2 * d) * &self.coeff_h * &self.coeff_h - BigInt::from(2) * &self.coeff_b * &self.coeff_b
    }

    /// `−b/a`, the `k` in `H̃ − kB`; `None` for the ray `±B`.
    pub fn slope(&self) -> Option<BigRational> {
        (!self.coeff_h.is_zero()).then(|| BigRational::new(-self.coeff_b.clone(), self.coeff_h.clone()))
    }

    /// Preimage in `v^⊥`: `a·(0,−1,0) + b·(−1,0,−1)`.
    pub fn preimage(&self) -> MukaiVector {
        MukaiVector::new(-self.coeff_b.clone(), -self.coeff_h.clone(), -self.coeff_b.clone())
    }

    /// Ray through a class of `v^⊥` for `v = (2,0,−2)`.
    pub fn from_preimage(x: &MukaiVector) -> Result<Self> {
        if x.r != x.a || x.is_zero() {
            return Err(Error::UnsupportedVector(x.to_string()));
        }
        Ok(Self::new(-x.c.clone(), -x.r.clone()))
    }
}

impl fmt::Display for ConeRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (h, b) = (&self.coeff_h, &self.coeff_b);
        let h_part = match h {
            h if h.is_zero() => String::new(),
            h if h.is_one() => "H~".to_string(),
            h => format!("{h}H~"),
        };
        if b.is_zero() {
            return write!(f, "{h_part}");
        }
        let mag = b.abs();
        let b_part = if mag.is_one() { "B".to_string() } else { format!("{mag}B") };
        match (h_part.is_empty(), b.is_negative()) {
            (true, true) => write!(f, "-{b_part}"),
            (true, false) => write!(f, "{b_part}"),
            (false, true) => write!(f, "{h_part}-{b_part}"),
            (false, false) => write!(f, "{h_part}+{b_part}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeCase {
    PerfectSquare,
    BNPell,
    LGUPell,
    NoFloppingWall,
    SCWall,
}

/// Which Pell equation produced a flopping wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScEquation {
    /// `x^2 − 4d·y^2 = 5`, class `((x+1)/2, −y, (x−1)/2)`, `(s, v) = 2`.
    PairingTwo,
    /// `x^2 − d·y^2 = 2`, class `(x+1, −y, x−1)`, `(s, v) = 4`.
    PairingFour,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ConeWitness {
    /// `q(ray) = 0`.
    SquareZero { ray: ConeRay },
    Pell { solution: PellSolution, class: MukaiVector },
    Flop { equation: ScEquation, solution: PellSolution, class: MukaiVector },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeResult {
    pub ray_low: ConeRay,
    pub ray_high: ConeRay,
    pub case_tag: ConeCase,
    pub witness: ConeWitness,
    /// Both flopping equations are soluble; the smaller slope was taken.
    #[serde(default)]
    pub ambiguous: bool,
}

fn perfect_square_root(d: u64) -> Option<u64> {
    let k = d.sqrt();
    (k * k == d).then_some(k)
}

/// Generator of `v^⊥ ∩ s^⊥` for `v = (2,0,−2)`, as a ray in `NS(M)`.
pub fn orthogonal_ray(v: &MukaiVector, s: &MukaiVector, d: u64) -> Result<ConeRay> {
    if *v != standard_vector() {
        return Err(Error::UnsupportedVector(v.to_string()));
    }
    if v.is_proportional(s) || s.is_zero() {
        return Err(Error::NotTransverse(s.to_string()));
    }
    let surf = Surface::new(d)?;
    // x ⊥ y  ⇔  x · (G y) = 0 with G the Gram matrix in (r, c, a) coordinates.
    let gy = |y: &MukaiVector| MukaiVector::new(-y.a.clone(), surf.h_square() * &y.c, -y.r.clone());
    let n = crate::mukai::cross(&gy(v), &gy(s));
    let x = MukaiVector::new(n[0].clone(), n[1].clone(), n[2].clone());
    debug_assert!(pairing(&x, v, &surf).is_zero() && pairing(&x, s, &surf).is_zero());
    ConeRay::from_preimage(&x)
}

/// The movable cone `⟨H̃, ray_high⟩`.
pub fn movable_cone(d: u64) -> Result<ConeResult> {
    Surface::new(d)?;
    if let Some(k) = perfect_square_root(d) {
        let ray = ConeRay::new(1, -(k as i64));
        return Ok(ConeResult {
            ray_low: ConeRay::h_tilde(),
            ray_high: ray.clone(),
            case_tag: ConeCase::PerfectSquare,
            witness: ConeWitness::SquareZero { ray },
            ambiguous: false,
        });
    }
    match pell_fundamental(d) {
        Some(sol) => {
            // s = (x, −yH, x) with s^2 = −2 and (s, v) = 0.
            let class = MukaiVector::new(sol.x.clone(), -sol.y.clone(), sol.x.clone());
            let ray = ConeRay::new(sol.x.clone(), -(BigInt::from(d) * &sol.y));
            debug_assert_eq!(orthogonal_ray(&standard_vector(), &class, d).ok(), Some(ray.clone()));
            Ok(ConeResult {
                ray_low: ConeRay::h_tilde(),
                ray_high: ray,
                case_tag: ConeCase::BNPell,
                witness: ConeWitness::Pell { solution: sol, class },
                ambiguous: false,
            })
        }
        // Unreachable for integral non-square d, where x^2 − dy^2 = 1 is always soluble.
        None => lgu_movable_cone(d),
    }
}

/// Movable boundary from isotropic classes `w` with `(w, v) = 2`:
/// `w = ((x+1)/2, −y', (x−1)/2)` with `x^2 − 4d·y'^2 = 1`.
fn lgu_movable_cone(d: u64) -> Result<ConeResult> {
    let sol = pell_fundamental(4 * d).ok_or_else(|| Error::UnsupportedVector(format!("d = {d}")))?;
    let class = MukaiVector::new((&sol.x + 1) / 2, -sol.y.clone(), (&sol.x - 1) / 2);
    let ray = orthogonal_ray(&standard_vector(), &class, d)?;
    Ok(ConeResult {
        ray_low: ConeRay::h_tilde(),
        ray_high: ray,
        case_tag: ConeCase::LGUPell,
        witness: ConeWitness::Pell { solution: sol, class },
        ambiguous: false,
    })
}

/// Spherical class and ray for each soluble flopping equation.
pub fn flopping_candidates(d: u64) -> Result<Vec<(ScEquation, PellSolution, MukaiVector, ConeRay)>> {
    let mut out = Vec::new();
    if let Some(sol) = pell_general(4 * d, &BigInt::from(5)) {
        let class = MukaiVector::new((&sol.x + 1) / 2, -sol.y.clone(), (&sol.x - 1) / 2);
        let ray = orthogonal_ray(&standard_vector(), &class, d)?;
        out.push((ScEquation::PairingTwo, sol, class, ray));
    }
    if let Some(sol) = pell_general(d, &BigInt::from(2)) {
        let class = MukaiVector::new(&sol.x + 1, -sol.y.clone(), &sol.x - 1);
        let ray = orthogonal_ray(&standard_vector(), &class, d)?;
        out.push((ScEquation::PairingFour, sol, class, ray));
    }
    Ok(out)
}

/// The nef cone `⟨H̃, ray_high⟩`. The far ray is the orthogonal complement of
/// the flopping class with the smallest slope, or the movable boundary when
/// no flopping wall exists.
pub fn nef_cone(d: u64) -> Result<ConeResult> {
    let mov = movable_cone(d)?;
    let candidates = flopping_candidates(d)?;
    let ambiguous = candidates.len() > 1;
    let best = candidates.into_iter().min_by(|a, b| compare_slopes(&a.3, &b.3));
    Ok(match best {
        None => ConeResult { case_tag: ConeCase::NoFloppingWall, ..mov },
        Some((equation, solution, class, ray)) => ConeResult {
            ray_low: ConeRay::h_tilde(),
            ray_high: ray,
            case_tag: ConeCase::SCWall,
            witness: ConeWitness::Flop { equation, solution, class },
            ambiguous,
        },
    })
}

fn compare_slopes(a: &ConeRay, b: &ConeRay) -> Ordering {
    match (a.slope(), b.slope()) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

/// Primitive class with `q = 0`, which exists iff `d` is a perfect square.
pub fn square_zero_class(d: u64) -> Option<ConeRay> {
    perfect_square_root(d).map(|k| ConeRay::new(1, -(k as i64)))
}

/// Position of a ray of the positive cone relative to `Nef ⊂ Mov`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConePosition {
    /// The common ray `H̃`.
    CommonBoundary,
    NefInterior,
    NefBoundary,
    MovableInterior,
    MovableBoundary,
    OutsideMovable,
}

impl fmt::Display for ConePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CommonBoundary => "movable boundary (H~)",
            Self::NefInterior => "nef interior",
            Self::NefBoundary => "nef boundary",
            Self::MovableInterior => "movable interior, outside nef",
            Self::MovableBoundary => "movable boundary",
            Self::OutsideMovable => "outside movable cone",
        })
    }
}

/// Locates the ray `h·H̃ + b·B` (with `h > 0`) by its slope `−b/h`.
pub fn cone_position(d: u64, h: &BigRational, b: &BigRational) -> Result<ConePosition> {
    if !h.is_positive() {
        return Ok(ConePosition::OutsideMovable);
    }
    let k = -(b / h);
    let nef = nef_cone(d)?.ray_high.slope();
    let mov = movable_cone(d)?.ray_high.slope();
    let (nef, mov) = match (nef, mov) {
        (Some(n), Some(m)) => (n, m),
        _ => return Err(Error::InvariantViolation("cone ray without slope".into())),
    };
    Ok(match k.cmp(&BigRational::zero()) {
        Ordering::Less => ConePosition::OutsideMovable,
        Ordering::Equal => ConePosition::CommonBoundary,
        Ordering::Greater => match (k.cmp(&nef), k.cmp(&mov)) {
            (Ordering::Less, _) => ConePosition::NefInterior,
            (Ordering::Equal, Ordering::Equal) => ConePosition::MovableBoundary,
            (Ordering::Equal, _) => ConePosition::NefBoundary,
            (_, Ordering::Less) => ConePosition::MovableInterior,
            (_, Ordering::Equal) => ConePosition::MovableBoundary,
            _ => ConePosition::OutsideMovable,
        },
    })
}

/// Serializable summary of both cones for one `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub d: Int,
    pub movable: ConeResult,
    pub nef: ConeResult,
    pub square_zero: Option<ConeRay>,
}

pub fn cone_report(d: u64) -> Result<ConeReport> {
    Ok(ConeReport { d: Int(BigInt::from(d)), movable: movable_cone(d)?, nef: nef_cone(d)?, square_zero: square_zero_class(d) })
}
