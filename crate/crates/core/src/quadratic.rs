//! Pell-type equations `x^2 − D·y^2 = N` and lattice classes with a
//! prescribed square and pairing against `v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_sqrt, integer_roots, isqrt};
use crate::lattice::WallLattice;
use crate::mukai::MukaiVector;
use crate::{Error, Result};

/// Largest `y_max` accepted by [`brute_force_oracle`].
pub const ORACLE_MAX_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::arith::serde_exact::ser_int", deserialize_with = "crate::arith::serde_exact::de_int")]
    pub y: BigInt,
}

impl PellSolution {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self { x: x.into(), y: y.into() }
    }

    /// `x^2 − D·y^2`.
    pub fn norm(&self, d: u64) -> BigInt {
        &self.x * &self.x - BigInt::from(d) * &self.y * &self.y
    }

    /// Brahmagupta composition `(x1 x2 + D y1 y2, x1 y2 + x2 y1)`; norms multiply.
    pub fn compose(&self, other: &Self, d: u64) -> Self {
        Self {
            x: &self.x * &other.x + BigInt::from(d) * &self.y * &other.y,
            y: &self.x * &other.y + &other.x * &self.y,
        }
    }
}

/// Fundamental solution of `x^2 − D·y^2 = 1` from the continued fraction of
/// `√D`; `None` exactly when `D` is a perfect square.
pub fn pell_fundamental(d: u64) -> Option<PellSolution> {
    if d == 0 {
        return None;
    }
    let dd = BigInt::from(d);
    let a0 = dd.sqrt();
    if &a0 * &a0 == dd {
        return None;
    }
    // Periodic expansion √D = [a0; a1, a2, ...] via (m, q, a) recurrences.
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - &dd * &k * &k == BigInt::one() {
            return Some(PellSolution { x: h, y: k });
        }
        m = &q * &a - &m;
        q = (&dd - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// The non-negative solution of `x^2 − D·y^2 = N` with minimal `x` (then
/// minimal `y`), or `None` when there is no integral solution.
///
/// For non-square `D` and `N^2 < D` the answer is read off the convergents of
/// `√D`; otherwise the search runs over `y` up to the classical bound for
/// fundamental solutions of each class, computed from the fundamental unit.
/// For `D = k^2` the factorisation `(x − ky)(x + ky) = N` is used instead.
pub fn pell_general(d: u64, n: &BigInt) -> Option<PellSolution> {
    assert!(d >= 1, "D must be positive");
    if n.is_zero() {
        return Some(PellSolution::new(0, 0));
    }
    let dd = BigInt::from(d);
    let k = dd.sqrt();
    if &k * &k == dd {
        return pell_square_d(&k, n);
    }
    if n * n < dd {
        return pell_small_n(&dd, n);
    }
    pell_nagell(&dd, n)
}

/// Scans `y` up to Nagell's bound for fundamental solutions of each class.
fn pell_nagell(dd: &BigInt, n: &BigInt) -> Option<PellSolution> {
    let d = u64::try_from(dd).expect("D fits in u64");
    let unit = pell_fundamental(d).expect("non-square D has a fundamental unit");
    let denom = if n.is_positive() { BigInt::from(2) * (&unit.x + 1) } else { BigInt::from(2) * (&unit.x - 1) };
    let y_bound = isqrt(&(&unit.y * &unit.y * n.abs() / denom)).unwrap_or_default();
    let mut y = BigInt::zero();
    while y <= y_bound {
        if let Some(x) = exact_sqrt(&(n + dd * &y * &y)) {
            return Some(PellSolution { x, y });
        }
        y += 1;
    }
    None
}

/// `|N| < √D`: every primitive positive solution is a convergent of `√D`,
/// so the first matching convergent (over two periods) is minimal.
fn pell_small_n(dd: &BigInt, n: &BigInt) -> Option<PellSolution> {
    if let Some(x) = exact_sqrt(n) {
        return Some(PellSolution { x, y: BigInt::zero() });
    }
    let mut best: Option<PellSolution> = None;
    let mut g = BigInt::one();
    while &g * &g <= n.abs() {
        let g2 = &g * &g;
        if n.is_multiple_of(&g2) {
            if let Some(sol) = first_convergent_with_norm(dd, &(n / &g2)) {
                let cand = PellSolution { x: &sol.x * &g, y: &sol.y * &g };
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        g += 1;
    }
    best
}

fn first_convergent_with_norm(dd: &BigInt, n: &BigInt) -> Option<PellSolution> {
    let a0 = dd.sqrt();
    let two_a0 = BigInt::from(2) * &a0;
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let mut periods = 0;
    while periods < 2 {
        if &(&h * &h - dd * &k * &k) == n {
            return Some(PellSolution { x: h, y: k });
        }
        m = &q * &a - &m;
        q = (dd - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        if a == two_a0 {
            periods += 1;
        }
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    None
}

fn pell_square_d(k: &BigInt, n: &BigInt) -> Option<PellSolution> {
    // x − ky = e, x + ky = f, e·f = N, e ≡ f (mod 2), (f − e)/2 divisible by k.
    let mut best: Option<PellSolution> = None;
    let abs_n = n.abs();
    let mut e = BigInt::one();
    while &e * &e <= abs_n {
        if abs_n.is_multiple_of(&e) {
            let other = &abs_n / &e;
            for (p, q) in [(e.clone(), other.clone()), (other.clone(), e.clone())] {
                for sign in [1i32, -1] {
                    let (ee, ff) = if n.is_positive() {
                        (p.clone() * sign, q.clone() * sign)
                    } else {
                        (p.clone() * sign, -q.clone() * sign)
                    };
                    let (sum, diff) = (&ee + &ff, &ff - &ee);
                    if sum.is_odd() {
                        continue;
                    }
                    let x = sum / BigInt::from(2);
                    let ky = diff / BigInt::from(2);
                    if x.is_negative() || ky.is_negative() || !ky.is_multiple_of(k) {
                        continue;
                    }
                    let cand = PellSolution { x, y: ky / k };
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        e += 1;
    }
    best
}

/// Every `(x, y)` with `x >= 0`, `0 <= y <= y_max` and `x^2 − D·y^2 = N`, by
/// direct scan.
pub fn brute_force_oracle(d: u64, n: &BigInt, y_max: u64) -> Result<Vec<PellSolution>> {
    if y_max > ORACLE_MAX_BOUND {
        return Err(Error::BoundTooLarge(y_max, ORACLE_MAX_BOUND));
    }
    let dd = BigInt::from(d);
    Ok((0..=y_max)
        .filter_map(|y| {
            let y = BigInt::from(y);
            exact_sqrt(&(n + &dd * &y * &y)).map(|x| PellSolution { x, y })
        })
        .collect())
}

/// Classes `u` in a wall lattice with `u^2 = square` and `(u, v) = pairing_with_v`.
#[derive(Debug, Clone)]
pub struct ClassQuery {
    pub lattice: WallLattice,
    pub square: BigInt,
    pub pairing_with_v: BigInt,
}

impl ClassQuery {
    pub fn new(lattice: WallLattice, square: impl Into<BigInt>, pairing_with_v: impl Into<BigInt>) -> Self {
        Self { lattice, square: square.into(), pairing_with_v: pairing_with_v.into() }
    }
}

/// All lattice classes satisfying the query, sorted.
///
/// The linear constraint puts `u` on an affine line `p0 + t·dir`; the square
/// constraint becomes a quadratic in `t` whose integer roots are checked
/// exactly. `dir` spans `v^⊥`, which is negative definite in a hyperbolic
/// lattice with `v^2 > 0`, so the list is finite.
pub fn solve_constrained_classes(q: &ClassQuery, v: &MukaiVector) -> Result<Vec<MukaiVector>> {
    let l = &q.lattice;
    if l.determinant().is_zero() {
        return Err(Error::DegenerateLattice);
    }
    l.coords(v).ok_or_else(|| Error::VectorNotInLattice(v.to_string()))?;
    // (u, v) = A·x + B·y in basis coordinates.
    let [a_coef, b_coef] = l.pairings_with(v);
    if a_coef.is_zero() && b_coef.is_zero() {
        // v pairs to zero with the whole lattice; only possible when degenerate.
        return Err(Error::DegenerateLattice);
    }
    let (g, s, t) = crate::arith::ext_gcd(&a_coef, &b_coef);
    let (k_div, k_rem) = q.pairing_with_v.div_rem(&g);
    if !k_rem.is_zero() {
        return Ok(Vec::new());
    }
    let (x0, y0) = (&s * &k_div, &t * &k_div);
    let (dx, dy) = (&b_coef / &g, -(&a_coef / &g));
    // Q(x0 + t·dx, y0 + t·dy) = qa·t^2 + qb·t + qc
    let gm = &l.gram;
    let bil = |x1: &BigInt, y1: &BigInt, x2: &BigInt, y2: &BigInt| {
        &gm[0][0] * x1 * x2 + &gm[0][1] * (x1 * y2 + x2 * y1) + &gm[1][1] * y1 * y2
    };
    let qa = bil(&dx, &dy, &dx, &dy);
    let qb = BigInt::from(2) * bil(&x0, &y0, &dx, &dy);
    let qc = bil(&x0, &y0, &x0, &y0) - &q.square;
    let roots = integer_roots(&qa, &qb, &qc).ok_or(Error::DegenerateLattice)?;
    let mut out: Vec<MukaiVector> =
        roots.iter().map(|t| l.element(&(&x0 + t * &dx), &(&y0 + t * &dy))).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_wall_lattice;
    use crate::mukai::{pairing, Surface};
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn mv(r: i64, c: i64, a: i64) -> MukaiVector {
        MukaiVector::new(r, c, a)
    }

    #[test]
    fn convergent_path_matches_nagell_scan() {
        for d in 2..=100u64 {
            let dd = b(d as i64);
            if dd.sqrt().pow(2) == dd {
                continue;
            }
            let mut n = 1i64;
            while n * n < d as i64 {
                for n in [n, -n] {
                    assert_eq!(pell_small_n(&dd, &b(n)), pell_nagell(&dd, &b(n)), "D = {d}, N = {n}");
                }
                n += 1;
            }
        }
    }

    #[test]
    fn large_fundamental_units() {
        // 181 has a fundamental unit near 10^18, out of reach of a linear scan.
        assert!(pell_general(181, &b(2)).is_none_or(|s| s.norm(181) == b(2)));
        let s = pell_general(124, &b(5)).unwrap();
        assert_eq!(s.norm(124), b(5));
        assert_eq!(pell_general(31, &b(2)).unwrap().norm(31), b(2));
    }

    /// Independent oracle: smallest y in 1..=limit with 1 + D y^2 square.
    fn scan_fundamental(d: u64, limit: u64) -> Option<(u64, u64)> {
        (1..=limit).find_map(|y| {
            let x2 = 1 + d * y * y;
            let x = (x2 as f64).sqrt().round() as u64;
            (x * x == x2).then_some((x, y))
        })
    }

    #[test]
    fn fundamental_solutions_match_scan() {
        // Frozen from scan_fundamental(D, 100).
        assert_eq!(scan_fundamental(2, 100), Some((3, 2)));
        assert_eq!(scan_fundamental(3, 100), Some((2, 1)));
        assert_eq!(pell_fundamental(2), Some(PellSolution::new(3, 2)));
        assert_eq!(pell_fundamental(3), Some(PellSolution::new(2, 1)));
        assert_eq!(pell_fundamental(4), None);
        assert_eq!(pell_fundamental(1), None);
        for d in 2..60u64 {
            match (pell_fundamental(d), scan_fundamental(d, 100)) {
                (Some(p), Some((x, y))) => assert_eq!(p, PellSolution::new(x, y), "D={d}"),
                (None, None) => {}
                (Some(p), None) => assert!(p.y > b(100), "D={d}"),
                (None, Some(_)) => panic!("missed solution for D={d}"),
            }
        }
        // Large fundamental unit.
        let p = pell_fundamental(61).unwrap();
        assert_eq!(p, PellSolution::new(1_766_319_049u64, 226_153_980u64));
    }

    #[test]
    fn general_equations_from_examples() {
        assert_eq!(pell_general(4, &b(5)), Some(PellSolution::new(3, 1)));
        assert_eq!(pell_general(1, &b(2)), None);
        assert_eq!(pell_general(2, &b(2)), Some(PellSolution::new(2, 1)));
        assert_eq!(pell_general(8, &b(5)), None);
        assert_eq!(pell_general(2, &b(-1)), Some(PellSolution::new(1, 1)));
        assert_eq!(pell_general(3, &b(-1)), None);
        assert_eq!(pell_general(9, &b(-8)), Some(PellSolution::new(1, 1)));
    }

    #[test]
    fn oracle_examples() {
        let got = brute_force_oracle(2, &b(1), 20).unwrap();
        assert_eq!(got, vec![PellSolution::new(1, 0), PellSolution::new(3, 2), PellSolution::new(17, 12)]);
        assert_eq!(brute_force_oracle(4, &b(5), 20).unwrap(), vec![PellSolution::new(3, 1)]);
        assert!(brute_force_oracle(3, &b(2), 50).unwrap().is_empty());
        assert_eq!(brute_force_oracle(2, &b(1), 2_000_000), Err(Error::BoundTooLarge(2_000_000, ORACLE_MAX_BOUND)));
    }

    #[test]
    fn constrained_class_examples() {
        let s = Surface::new(1).unwrap();
        let v = mv(2, 0, -2);
        let l = make_wall_lattice(&v, &mv(1, 0, 0), &s).unwrap();
        let iso = solve_constrained_classes(&ClassQuery::new(l.clone(), 0, 2), &v).unwrap();
        assert!(iso.contains(&mv(1, 0, 0)));
        assert_eq!(iso, vec![mv(0, 0, -1), mv(1, 0, 0)]);
        let sph = solve_constrained_classes(&ClassQuery::new(l, -2, 0), &v).unwrap();
        assert_eq!(sph, vec![mv(-1, 0, -1), mv(1, 0, 1)]);

        let v = mv(2, 2, 0);
        let l = make_wall_lattice(&v, &mv(2, 1, 1), &s).unwrap();
        let sc = solve_constrained_classes(&ClassQuery::new(l, -2, 2), &v).unwrap();
        assert!(sc.contains(&mv(2, 1, 1)));
    }

    #[test]
    fn constrained_errors() {
        let s = Surface::new(1).unwrap();
        let l = make_wall_lattice(&mv(2, 0, -2), &mv(1, 0, 0), &s).unwrap();
        let q = ClassQuery::new(l, -2, 0);
        assert!(matches!(solve_constrained_classes(&q, &mv(0, 1, 0)), Err(Error::VectorNotInLattice(_))));
    }

    proptest! {
        #[test]
        fn composition_stays_on_unit_norm(d in 2u64..80, k in 1usize..4) {
            if let Some(f) = pell_fundamental(d) {
                let mut p = f.clone();
                for _ in 0..k {
                    p = p.compose(&f, d);
                    prop_assert_eq!(p.norm(d), BigInt::one());
                }
            }
        }

        #[test]
        fn constrained_output_satisfies_constraints(
            r in -5i64..5, c in -5i64..5, a in -5i64..5, d in 1u64..4, sq in -2i64..=0, k in -6i64..6,
        ) {
            let s = Surface::new(d).unwrap();
            let v = mv(2, 0, -2);
            if let Ok(l) = make_wall_lattice(&v, &mv(r, c, a), &s) {
                let out = solve_constrained_classes(&ClassQuery::new(l.clone(), sq * 2 / 2, k), &v).unwrap();
                for u in out {
                    prop_assert_eq!(u.square(&s), b(sq));
                    prop_assert_eq!(pairing(&u, &v, &s), b(k));
                    prop_assert!(l.coords(&u).is_some());
                }
            }
        }
    }
}
