//! The geometric slice `σ_{u,t}`, `Z(x) = ⟨exp((u + i t)H), x⟩`, of the
//! stability manifold of a Picard-rank-one K3 surface.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::serde_exact::{de_rat, ser_rat, Rat};
use crate::arith::{gcd3, integer_roots, rat_int};
use crate::classify::{classify_wall, WallClassification};
use crate::lattice::{make_wall_lattice, LatticeData, WallLattice};
use crate::mukai::{is_ogrady_type, normal_form_twist, MukaiVector, Surface};
use crate::{Error, Result};

/// A point `(u, t)` of the upper half-plane, `t > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicePoint {
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub u: BigRational,
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub t: BigRational,
}

impl SlicePoint {
    pub fn new(u: BigRational, t: BigRational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidSlicePoint);
        }
        Ok(Self { u, t })
    }
}

/// Exact complex rational `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Real and imaginary coefficients of `Z(x)` at `u + i·t` with `t^2 = t_sq`:
/// `Z(x) = P + i·t·Q`. Works for irrational `t` as long as `t^2` is rational.
pub(crate) fn charge_parts(x: &MukaiVector, u: &BigRational, t_sq: &BigRational, s: &Surface) -> (BigRational, BigRational) {
    let d = rat_int(s.d_big());
    let (r, c, a) = (rat_int(&x.r), rat_int(&x.c), rat_int(&x.a));
    let two = rat_int(&BigInt::from(2));
    let p = &two * &d * &c * u - &d * &r * (u * u - t_sq) - &a;
    let q = &two * &d * &c - &two * &d * &r * u;
    (p, q)
}

/// `Z(x) = 2d·c·z − d·r·z^2 − a` at `z = u + i t`.
pub fn central_charge(x: &MukaiVector, p: &SlicePoint, s: &Surface) -> ComplexRational {
    let (re, q) = charge_parts(x, &p.u, &(&p.t * &p.t), s);
    ComplexRational { re, im: q * &p.t }
}

/// Geometric type of the locus `α(u^2 + t^2) + βu + γ = 0`, `t > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum WallShape {
    Circle {
        #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
        center_u: BigRational,
        #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
        radius_sq: BigRational,
    },
    VerticalLine {
        #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
        u0: BigRational,
    },
    Empty,
    Degenerate,
}

/// Numerical wall `{Im Z(w)/Z(v) = 0}` in the slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCurve {
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub alpha: BigInt,
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub beta: BigInt,
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub gamma: BigInt,
    pub shape: WallShape,
}

/// Height used to represent vertical walls; every spherical hole
/// `c/r + i/(|r|√d)` lies at height at most one.
pub const VERTICAL_REFERENCE_HEIGHT: i64 = 2;

impl WallCurve {
    fn from_coefficients(alpha: BigInt, beta: BigInt, gamma: BigInt) -> Self {
        let g = gcd3(&alpha, &beta, &gamma);
        if g.is_zero() {
            return Self { alpha, beta, gamma, shape: WallShape::Degenerate };
        }
        let (mut alpha, mut beta, mut gamma) = (alpha / &g, beta / &g, gamma / &g);
        let lead = if !alpha.is_zero() { &alpha } else if !beta.is_zero() { &beta } else { &gamma };
        if lead.is_negative() {
            (alpha, beta, gamma) = (-alpha, -beta, -gamma);
        }
        let shape = if !alpha.is_zero() {
            let disc = &beta * &beta - BigInt::from(4) * &alpha * &gamma;
            if disc.is_positive() {
                WallShape::Circle {
                    center_u: BigRational::new(-&beta, BigInt::from(2) * &alpha),
                    radius_sq: BigRational::new(disc, BigInt::from(4) * &alpha * &alpha),
                }
            } else {
                WallShape::Empty
            }
        } else if !beta.is_zero() {
            WallShape::VerticalLine { u0: BigRational::new(-&gamma, beta.clone()) }
        } else {
            // Nonzero constant: no solutions.
            WallShape::Empty
        };
        Self { alpha, beta, gamma, shape }
    }

    /// Sign of `α(u^2 + t^2) + βu + γ`; zero exactly on the curve.
    pub fn side(&self, p: &SlicePoint) -> Ordering {
        let val = rat_int(&self.alpha) * (&p.u * &p.u + &p.t * &p.t) + rat_int(&self.beta) * &p.u + rat_int(&self.gamma);
        val.cmp(&BigRational::zero())
    }

    pub fn contains(&self, p: &SlicePoint) -> bool {
        !matches!(self.shape, WallShape::Degenerate | WallShape::Empty) && self.side(p) == Ordering::Equal
    }

    /// Reference point `(u, t^2)` on the curve: the top of a circle, or
    /// height [`VERTICAL_REFERENCE_HEIGHT`] on a vertical line.
    pub fn reference_point(&self) -> Option<(BigRational, BigRational)> {
        match &self.shape {
            WallShape::Circle { center_u, radius_sq } => Some((center_u.clone(), radius_sq.clone())),
            WallShape::VerticalLine { u0 } => {
                Some((u0.clone(), rat_int(&BigInt::from(VERTICAL_REFERENCE_HEIGHT * VERTICAL_REFERENCE_HEIGHT))))
            }
            WallShape::Empty | WallShape::Degenerate => None,
        }
    }

    /// Translate by `u ↦ u + m`.
    pub fn translated(&self, m: &BigInt) -> WallCurve {
        // α((u−m)^2 + t^2) + β(u−m) + γ
        let alpha = self.alpha.clone();
        let beta = &self.beta - BigInt::from(2) * &self.alpha * m;
        let gamma = &self.alpha * m * m - &self.beta * m + &self.gamma;
        WallCurve::from_coefficients(alpha, beta, gamma)
    }

    fn sort_key(&self) -> (u8, Option<BigRational>, Option<BigRational>) {
        match &self.shape {
            WallShape::Circle { center_u, radius_sq } => (0, Some(center_u.clone()), Some(radius_sq.clone())),
            WallShape::VerticalLine { u0 } => (0, Some(u0.clone()), None),
            WallShape::Empty => (1, None, None),
            WallShape::Degenerate => (2, None, None),
        }
    }
}

/// Integer form of the wall coefficients, evaluated at compile time below.
pub const fn wall_coefficients_i64(v: [i64; 3], w: [i64; 3], d: i64) -> [i64; 3] {
    let [r, c, a] = v;
    let [r2, c2, a2] = w;
    [d * (c * r2 - c2 * r), a2 * r - a * r2, c2 * a - c * a2]
}

// Im(Z_w · conj Z_v) = −2dt·(α(u^2+t^2) + βu + γ). Pin the sign convention on
// the flopping wall of (2,2H,0) at d = 1: centre −1/2, radius^2 5/4.
const _: () = {
    let [al, be, ga] = wall_coefficients_i64([2, 2, 0], [2, 1, 1], 1);
    assert!(al != 0);
    // centre −β/(2α) = −1/2  ⇔  β = α
    assert!(be == al);
    // radius^2 (β^2 − 4αγ)/(4α^2) = 5/4  ⇔  β^2 − 4αγ = 5α^2
    assert!(be * be - 4 * al * ga == 5 * al * al);
};

/// The numerical wall of `w` with respect to `v`.
pub fn numerical_wall(v: &MukaiVector, w: &MukaiVector, s: &Surface) -> WallCurve {
    let alpha = s.d_big() * (&v.c * &w.r - &w.c * &v.r);
    let beta = &w.a * &v.r - &v.a * &w.r;
    let gamma = &w.c * &v.a - &v.c * &w.a;
    WallCurve::from_coefficients(alpha, beta, gamma)
}

/// Image `w_σ = Im(Ω / −(Ω, v))` of the local Bayer-Macrì map, with
/// coordinates in the basis `H̃ = θ(0,−H,0)`, `B = θ(−1,0,−1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BMImage {
    pub w_sigma: [Rat; 3],
    /// `(coefficient of H̃, coefficient of B)`, when `v` twists to `(2,0,−2)`.
    pub ns_coords: Option<[Rat; 2]>,
    /// Twist `m` relating `v` to the normal form; the basis is `exp(−mH)·(H̃, B)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_twist: Option<crate::arith::serde_exact::Int>,
    /// `w_σ^2`, equal to `q(ℓ_σ)`.
    pub q: Rat,
}

impl BMImage {
    pub fn w_vector(&self) -> [BigRational; 3] {
        self.w_sigma.clone().map(|r| r.0)
    }

    pub fn ns(&self) -> Option<(BigRational, BigRational)> {
        self.ns_coords.as_ref().map(|[h, b]| (h.0.clone(), b.0.clone()))
    }
}

fn rat_pairing(x: &[BigRational; 3], y: &[BigRational; 3], s: &Surface) -> BigRational {
    rat_int(&s.h_square()) * &x[1] * &y[1] - &x[0] * &y[2] - &x[2] * &y[0]
}

pub fn bm_ray(v: &MukaiVector, s: &Surface, p: &SlicePoint) -> Result<BMImage> {
    let z = central_charge(v, p, s);
    if z.is_zero() {
        return Err(Error::CentralChargeVanishes);
    }
    let d = rat_int(s.d_big());
    // Ω = (1, z, d z^2), z = u + i t
    let omega = [
        (rat_int(&BigInt::from(1)), BigRational::zero()),
        (p.u.clone(), p.t.clone()),
        (&d * (&p.u * &p.u - &p.t * &p.t), &d * rat_int(&BigInt::from(2)) * &p.u * &p.t),
    ];
    // Im((x + iy) / (−(P + iQ))) = (x·Q − y·P) / (P^2 + Q^2)
    let (pr, qi) = (z.re, z.im);
    let norm = &pr * &pr + &qi * &qi;
    let w: [BigRational; 3] = omega.map(|(x, y)| (x * &qi - y * &pr) / &norm);
    let q = rat_pairing(&w, &w, s);

    let twist = normal_form_twist(v, s);
    let ns_coords = twist.as_ref().map(|m| {
        let tw = twist_rational(&w, m, s);
        // w = x·(0,−1,0) + y·(−1,0,−1)
        [Rat(-tw[1].clone()), Rat(-tw[0].clone())]
    });
    Ok(BMImage { w_sigma: w.map(Rat), ns_coords, basis_twist: twist.map(crate::arith::serde_exact::Int), q: Rat(q) })
}

fn twist_rational(w: &[BigRational; 3], m: &BigInt, s: &Surface) -> [BigRational; 3] {
    let d = rat_int(s.d_big());
    let m = rat_int(m);
    let two = rat_int(&BigInt::from(2));
    [
        w[0].clone(),
        &w[1] + &w[0] * &m,
        &w[2] + &two * &d * &m * &w[1] + &d * &m * &m * &w[0],
    ]
}

/// Rectangle `[u_min, u_max] × (0, t_max]` of the slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub u_min: BigRational,
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub u_max: BigRational,
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub t_max: BigRational,
}

impl Window {
    pub fn new(u_min: BigRational, u_max: BigRational, t_max: BigRational) -> Result<Self> {
        let w = Self { u_min, u_max, t_max };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.u_min >= self.u_max || !self.t_max.is_positive() {
            return Err(Error::WindowEmpty);
        }
        Ok(())
    }

    pub fn translated(&self, m: &BigInt) -> Window {
        let m = rat_int(m);
        Window { u_min: &self.u_min + &m, u_max: &self.u_max + &m, t_max: self.t_max.clone() }
    }

    /// Whether the curve meets the window (at some point with `t > 0`).
    pub fn meets(&self, curve: &WallCurve) -> bool {
        match &curve.shape {
            WallShape::VerticalLine { u0 } => &self.u_min <= u0 && u0 <= &self.u_max,
            WallShape::Circle { center_u: m, radius_sq: rr } => {
                let lo = &self.u_min - m;
                let hi = &self.u_max - m;
                // The open arc spans (m − ρ, m + ρ).
                let left_of_arc_end = |x: &BigRational| !x.is_negative() && &(x * x) >= rr; // x >= ρ
                let right_of_arc_start = |x: &BigRational| !x.is_positive() && &(x * x) >= rr; // x <= −ρ
                if left_of_arc_end(&lo) || right_of_arc_start(&hi) {
                    return false;
                }
                // An arc end inside the window gives points with t → 0.
                if right_of_arc_start(&lo) || left_of_arc_end(&hi) {
                    return true;
                }
                // Both window edges cut the arc; the lowest cut is the farther one.
                let far = std::cmp::max(&lo * &lo, &hi * &hi);
                let min_t_sq = rr - far;
                min_t_sq <= &self.t_max * &self.t_max
            }
            WallShape::Empty | WallShape::Degenerate => false,
        }
    }
}

/// One wall of the chamber decomposition for `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallRecord {
    pub curve: WallCurve,
    pub lattice: LatticeData,
    pub classification: WallClassification,
    /// Witness classes echoed as Mukai triples.
    pub witnesses: Vec<MukaiVector>,
}

/// Candidate classes for wall generators: spherical and isotropic classes
/// `w` with `|rank(w)| <= rank_bound` and `|(w, v)| <= v^2`.
pub fn wall_candidates(v: &MukaiVector, s: &Surface, rank_bound: u64) -> Vec<MukaiVector> {
    let two_d = s.h_square();
    let v_sq = v.square(s);
    let k_max = v_sq.abs();
    let mut out = Vec::new();
    let rb = rank_bound as i64;
    for rank in -rb..=rb {
        let rank = BigInt::from(rank);
        let mut k = -k_max.clone();
        while k <= k_max {
            for sq in [-2i64, 0] {
                out.extend(classes_with(v, &rank, &k, &BigInt::from(sq), &two_d));
            }
            k += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Classes `(rank, c', a')` with `(w, v) = k` and `w^2 = sq`.
fn classes_with(v: &MukaiVector, rank: &BigInt, k: &BigInt, sq: &BigInt, two_d: &BigInt) -> Vec<MukaiVector> {
    // Linear: 2d·c·c' − r·a' = k + a·rank. Quadratic: 2d·c'^2 − 2·rank·a' = sq.
    let lin_c = two_d * &v.c;
    let lin_a = -v.r.clone();
    let rhs = k + &v.a * rank;
    if lin_c.is_zero() && lin_a.is_zero() {
        return Vec::new();
    }
    let (g, s0, t0) = crate::arith::ext_gcd(&lin_c, &lin_a);
    let (q, rem) = rhs.div_rem(&g);
    if !rem.is_zero() {
        return Vec::new();
    }
    let (c0, a0) = (&s0 * &q, &t0 * &q);
    let (dc, da) = (&lin_a / &g, -(&lin_c / &g));
    // 2d(c0 + t dc)^2 − 2 rank (a0 + t da) − sq = 0
    let qa = two_d * &dc * &dc;
    let qb = two_d * BigInt::from(2) * &c0 * &dc - BigInt::from(2) * rank * &da;
    let qc = two_d * &c0 * &c0 - BigInt::from(2) * rank * &a0 - sq;
    match integer_roots(&qa, &qb, &qc) {
        Some(ts) => ts
            .into_iter()
            .map(|t| MukaiVector { r: rank.clone(), c: &c0 + &t * &dc, a: &a0 + &t * &da })
            .collect(),
        // Identically satisfied: an infinite pencil with a degenerate lattice.
        None => Vec::new(),
    }
}

/// Walls of `v` meeting `window`, one per saturated wall lattice, generated
/// by the classes of [`wall_candidates`] and classified.
pub fn enumerate_walls(
    v: &MukaiVector,
    s: &Surface,
    window: &Window,
    rank_bound: u64,
    ts_search_bound: u64,
) -> Result<Vec<WallRecord>> {
    window.validate()?;
    if !is_ogrady_type(v, s)? {
        return Err(Error::NotOGradyType(v.to_string()));
    }
    let mut lattices: BTreeMap<[BigInt; 3], (WallLattice, WallCurve)> = BTreeMap::new();
    for w in wall_candidates(v, s, rank_bound) {
        let curve = numerical_wall(v, &w, s);
        if !window.meets(&curve) {
            continue;
        }
        let lattice = match make_wall_lattice(v, &w, s) {
            Ok(l) => l,
            Err(Error::NotRankTwo | Error::NotHyperbolic(_)) => continue,
            Err(e) => return Err(e),
        };
        lattices.entry(lattice.key().clone()).or_insert((lattice, curve));
    }
    let mut records = Vec::with_capacity(lattices.len());
    for (lattice, curve) in lattices.into_values() {
        let classification = match classify_wall(&lattice, v, &curve, ts_search_bound) {
            Ok(c) => c,
            Err(Error::AmbiguousSign) => WallClassification::unresolved(),
            Err(e) => return Err(e),
        };
        let witnesses = classification.witnesses.iter().map(|w| w.class.clone()).collect();
        records.push(WallRecord { curve, lattice: lattice.data(), classification, witnesses });
    }
    records.sort_by(|a, b| a.curve.sort_key().cmp(&b.curve.sort_key()).then_with(|| a.lattice.basis.cmp(&b.lattice.basis)));
    Ok(records)
}

/// Spherical holes `c/r + i/(|r|√d)` with `1 <= |r| <= rank_bound`, returned
/// as `(u, t^2)` and restricted to the window.
pub fn spherical_holes(s: &Surface, window: &Window, rank_bound: u64) -> Vec<(BigRational, BigRational)> {
    let d = rat_int(s.d_big());
    let mut out = Vec::new();
    for r in 1..=rank_bound as i64 {
        let rr = BigInt::from(r);
        let t_sq = BigRational::new(BigInt::from(1), BigInt::from(r * r)) / &d;
        if t_sq > &window.t_max * &window.t_max {
            continue;
        }
        let c_lo = (&window.u_min * rat_int(&rr)).ceil().to_integer();
        let c_hi = (&window.u_max * rat_int(&rr)).floor().to_integer();
        let mut c = c_lo;
        while c <= c_hi {
            // (r, c, a) spherical needs r | d c^2 + 1.
            if (s.d_big() * &c * &c + BigInt::from(1)).is_multiple_of(&rr) {
                out.push((BigRational::new(c.clone(), rr.clone()), t_sq.clone()));
            }
            c += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}
