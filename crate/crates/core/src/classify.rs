//! Wall taxonomy for O'Grady-type vectors: totally semistable walls (TS1,
//! TS2), divisorial walls (BN, LGU), flopping walls (SC), fake walls.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::integer_roots;
use crate::arith::serde_exact::Rat;
use crate::lattice::WallLattice;
use crate::mukai::{is_ogrady_type, pairing, MukaiVector};
use crate::quadratic::{solve_constrained_classes, ClassQuery};
use crate::slice::{charge_parts, numerical_wall, WallCurve};
use crate::{Error, Result};

/// Default bound on basis coordinates for the TS1 search.
pub const DEFAULT_TS_SEARCH_BOUND: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WallKind {
    DivisorialBN,
    DivisorialBNandLGU,
    Flopping,
    Fake,
    NotAWall,
    /// Effectivity could not be decided at the reference point.
    Unresolved,
}

impl WallKind {
    pub fn is_divisorial(self) -> bool {
        matches!(self, WallKind::DivisorialBN | WallKind::DivisorialBNandLGU)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WitnessLabel {
    TS1,
    TS2,
    BN,
    LGU,
    SC,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: WitnessLabel,
    pub class: MukaiVector,
    /// Effectivity at the wall's reference point; `None` if `Re Z(u)/Z(v) = 0` there.
    pub effective: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallClassification {
    pub totally_semistable: bool,
    pub kind: WallKind,
    pub witnesses: Vec<Witness>,
    /// Set when the bounded TS1 scan found nothing, so "not totally
    /// semistable" is only established up to the search bound.
    pub ts1_search_bounded: bool,
}

impl WallClassification {
    pub(crate) fn unresolved() -> Self {
        Self { totally_semistable: false, kind: WallKind::Unresolved, witnesses: Vec::new(), ts1_search_bounded: true }
    }

    pub fn witnesses_with(&self, label: WitnessLabel) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(move |w| w.label == label)
    }

    pub fn has(&self, label: WitnessLabel) -> bool {
        self.witnesses_with(label).next().is_some()
    }
}

/// Positive-cone and effective-cone membership of a lattice class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeMembership {
    pub positive: bool,
    pub effective: bool,
    /// Exact value of `Re Z(u)/Z(v)` at the reference point.
    pub re_ratio: Rat,
}

/// `Re Z(u)/Z(v)` at the wall's reference point, exactly.
///
/// With `t^2` rational, `Z(x) = P_x + i·t·Q_x` and
/// `Re Z(u)/Z(v) = (P_u P_v + t^2 Q_u Q_v) / (P_v^2 + t^2 Q_v^2)`.
fn re_ratio(v: &MukaiVector, u: &MukaiVector, wall: &WallCurve, l: &WallLattice) -> Result<BigRational> {
    let (pt_u, t_sq) = wall.reference_point().ok_or(Error::Unrepresented)?;
    let (pv, qv) = charge_parts(v, &pt_u, &t_sq, &l.surface);
    let (pu, qu) = charge_parts(u, &pt_u, &t_sq, &l.surface);
    let den = &pv * &pv + &t_sq * &qv * &qv;
    if den.is_zero() {
        return Err(Error::AmbiguousSign);
    }
    Ok((&pu * &pv + &t_sq * &qu * &qv) / den)
}

/// Decides whether `u ∈ L` is positive and whether it is effective at the
/// reference point `σ0` of `wall`. Fails with [`Error::AmbiguousSign`] when
/// the ratio vanishes there.
pub fn effectivity_sign(l: &WallLattice, v: &MukaiVector, u: &MukaiVector, wall: &WallCurve) -> Result<ConeMembership> {
    if l.coords(u).is_none() {
        return Err(Error::VectorNotInLattice(u.to_string()));
    }
    let s = &l.surface;
    let ratio = re_ratio(v, u, wall, l)?;
    if ratio.is_zero() {
        return Err(Error::AmbiguousSign);
    }
    let sq = u.square(s);
    let positive = pairing(v, u, s).is_positive() && !sq.is_negative();
    let effective = sq >= BigInt::from(-2) && ratio.is_positive();
    Ok(ConeMembership { positive, effective, re_ratio: Rat(ratio) })
}

fn effective_flag(l: &WallLattice, v: &MukaiVector, u: &MukaiVector, wall: &WallCurve) -> Result<Option<bool>> {
    match effectivity_sign(l, v, u, wall) {
        Ok(m) => Ok(Some(m.effective)),
        Err(Error::AmbiguousSign) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Classifies the potential wall of `L` represented by `wall`.
///
/// BN, LGU and SC are decided exactly; TS1 scans spherical classes whose
/// basis coordinates are bounded by `search_bound`.
pub fn classify_wall(l: &WallLattice, v: &MukaiVector, wall: &WallCurve, search_bound: u64) -> Result<WallClassification> {
    let s = &l.surface;
    if !is_ogrady_type(v, s)? {
        return Err(Error::NotOGradyType(v.to_string()));
    }
    if l.coords(v).is_none() {
        return Err(Error::VectorNotInLattice(v.to_string()));
    }
    if wall.reference_point().is_none() {
        return Err(Error::Unrepresented);
    }
    if numerical_wall(v, &l.basis[1], s) != *wall {
        return Err(Error::WallMismatch);
    }
    let [pv1, pv2] = l.pairings_with(v);
    if pv1.is_odd() || pv2.is_odd() {
        return Err(Error::InvariantViolation(format!("odd pairing with {v} in an O'Grady wall lattice")));
    }
    let mut witnesses = Vec::new();

    // (TS2) would need an isotropic w with (w, v) = 1, impossible since all
    // pairings with v are even.

    // (BN): the primitive generator of v^⊥ ∩ L must be spherical.
    let g = pv1.gcd(&pv2);
    let perp = l.element(&(&pv2 / &g), &(-(&pv1 / &g)));
    let bn = perp.square(s) == BigInt::from(-2);
    if bn {
        let eff = effective_flag(l, v, &perp, wall)?;
        let class = if eff == Some(false) { -perp } else { perp };
        let eff = eff.map(|_| true);
        witnesses.push(Witness { label: WitnessLabel::BN, class, effective: eff });
    }

    // (LGU): isotropic classes with (w, v) = 2.
    let lgu = solve_constrained_classes(&ClassQuery::new(l.clone(), 0, 2), v)?;
    for w in &lgu {
        witnesses.push(Witness { label: WitnessLabel::LGU, class: w.clone(), effective: effective_flag(l, v, w, wall)? });
    }
    if !lgu.is_empty() && !bn {
        return Err(Error::InvariantViolation("LGU witness without BN witness".into()));
    }

    // (SC): spherical classes with (s, v) ∈ {2, 4}; pairings are even and bounded by v^2/2.
    let mut sc = Vec::new();
    for k in [2, 4] {
        for w in solve_constrained_classes(&ClassQuery::new(l.clone(), -2, k), v)? {
            sc.push(Witness { label: WitnessLabel::SC, effective: effective_flag(l, v, &w, wall)?, class: w });
        }
    }
    sc.sort_by_key(|w| std::cmp::Reverse(w.effective == Some(true)));
    let has_sc = !sc.is_empty();
    witnesses.extend(sc);

    // (TS1): an effective spherical class with (s, v) < 0.
    let ts1 = scan_ts1(l, v, wall, search_bound)?;
    let totally_semistable = ts1.is_some();
    let ts1_search_bounded = ts1.is_none();
    if let Some(w) = ts1 {
        witnesses.push(Witness { label: WitnessLabel::TS1, class: w, effective: Some(true) });
    }

    let kind = if bn {
        if lgu.is_empty() {
            WallKind::DivisorialBN
        } else {
            WallKind::DivisorialBNandLGU
        }
    } else if has_sc {
        WallKind::Flopping
    } else if totally_semistable {
        WallKind::Fake
    } else {
        WallKind::NotAWall
    };
    Ok(WallClassification { totally_semistable, kind, witnesses, ts1_search_bounded })
}

/// Smallest (by max-norm of basis coordinates) effective spherical class with
/// negative pairing against `v`, scanning `|x|, |y| <= bound`.
fn scan_ts1(l: &WallLattice, v: &MukaiVector, wall: &WallCurve, bound: u64) -> Result<Option<MukaiVector>> {
    let g = &l.gram;
    let bound_big = BigInt::from(bound);
    let mut best: Option<(BigInt, MukaiVector)> = None;
    let b = bound as i64;
    for x in -b..=b {
        let x = BigInt::from(x);
        if let Some((norm, _)) = &best {
            if x.abs() > *norm {
                continue;
            }
        }
        // g11 x^2 + 2 g12 x y + g22 y^2 = −2
        let roots = integer_roots(&g[1][1], &(BigInt::from(2) * &g[0][1] * &x), &(&g[0][0] * &x * &x + 2));
        for y in roots.unwrap_or_default() {
            if y.abs() > bound_big {
                continue;
            }
            let cand = l.element(&x, &y);
            if !pairing(&cand, v, &l.surface).is_negative() {
                continue;
            }
            if effective_flag(l, v, &cand, wall)? != Some(true) {
                continue;
            }
            let norm = std::cmp::max(x.abs(), y.abs());
            let better = match &best {
                None => true,
                Some((n, w)) => norm < *n || (norm == *n && cand < *w),
            };
            if better {
                best = Some((norm, cand));
            }
        }
    }
    Ok(best.map(|(_, w)| w))
}
