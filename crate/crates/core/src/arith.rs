//! Small exact-integer helpers shared by the solvers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Floor square root of a non-negative integer, `None` for negatives.
pub fn isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        None
    } else {
        Some(n.sqrt())
    }
}

/// Exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    // squares are 0, 1, 4 or 9 mod 16
    let low = n.iter_u64_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = isqrt(n)?;
    (&r * &r == *n).then_some(r)
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

/// All integer roots of `a t^2 + b t + c = 0`, ascending.
///
/// Returns `None` when the polynomial is identically zero.
pub fn integer_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Option<Vec<BigInt>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { None } else { Some(Vec::new()) };
        }
        let (q, r) = (-c).div_rem(b);
        return Some(if r.is_zero() { vec![q] } else { Vec::new() });
    }
    let disc = b * b - BigInt::from(4) * a * c;
    let Some(s) = exact_sqrt(&disc) else {
        return Some(Vec::new());
    };
    let two_a = BigInt::from(2) * a;
    let mut roots = Vec::with_capacity(2);
    for num in [-b - &s, -b + &s] {
        let (q, r) = num.div_rem(&two_a);
        if r.is_zero() && !roots.contains(&q) {
            roots.push(q);
        }
    }
    roots.sort();
    Some(roots)
}

pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rat_int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25` into an exact rational.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().ok()?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().ok()?;
        let mag = int_part * &scale + frac_part;
        return Some(BigRational::new(if neg { -mag } else { mag }, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Best-effort conversion to `f64` for drawing.
pub fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn int_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn roots_of_quadratics() {
        assert_eq!(integer_roots(&b(1), &b(-3), &b(2)), Some(vec![b(1), b(2)]));
        assert_eq!(integer_roots(&b(1), &b(0), &b(-2)), Some(vec![]));
        assert_eq!(integer_roots(&b(2), &b(-1), &b(-1)), Some(vec![b(1)]));
        assert_eq!(integer_roots(&b(0), &b(2), &b(-6)), Some(vec![b(3)]));
        assert_eq!(integer_roots(&b(0), &b(0), &b(0)), None);
        assert_eq!(integer_roots(&b(1), &b(2), &b(1)), Some(vec![b(-1)]));
    }

    #[test]
    fn ext_gcd_is_bezout() {
        let (g, s, t) = ext_gcd(&b(-12), &b(18));
        assert_eq!(g, b(6));
        assert_eq!(s * b(-12) + t * b(18), b(6));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("1.5"), Some(rat(3, 2)));
        assert_eq!(parse_rat("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_rat("3"), Some(rat(3, 1)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
        assert_eq!(fmt_rat(&rat(6, -4)), "-3/2");
    }
}

/// Serde adapters: integers as JSON numbers when they fit in `i64` (strings
/// otherwise), rationals as `"p/q"` strings.
pub mod serde_exact {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum IntRepr {
        Small(i64),
        Big(String),
    }

    pub fn ser_int<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(n.to_string()),
        }
        .serialize(s)
    }

    pub fn de_int<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match IntRepr::deserialize(d)? {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s.parse().map_err(D::Error::custom),
        }
    }

    pub fn ser_rat<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_rat(q))
    }

    pub fn de_rat<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rat(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }

    /// `BigInt` wrapper usable inside containers.
    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
    pub struct Int(#[serde(serialize_with = "ser_int", deserialize_with = "de_int")] pub BigInt);

    /// `BigRational` wrapper usable inside containers.
    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
    pub struct Rat(#[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")] pub BigRational);
}
