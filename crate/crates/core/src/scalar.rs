//! Exact rationals and the tropical scalar ℝ̄ = ℚ ∪ {∞}.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` for non-integers, `p` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Accepts `p`, `p/q` and finite decimals such as `-1.25`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || !ip.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", ip, fp);
        let n: BigInt = if digits.is_empty() { return None } else { digits.parse().ok()? };
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(n, d);
        return Some(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Least common multiple of denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

/// Positive rescaling of a nonzero vector to coprime integers.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let l = common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for a in &ints {
        g = g.gcd(a);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|a| a / &g).collect()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

/// An element of ℝ̄ = ℚ ∪ {∞}; `Inf` is the ⊕-identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropScalar {
    Fin(Q),
    Inf,
}

impl TropScalar {
    pub fn zero() -> Self {
        TropScalar::Fin(Q::zero())
    }

    pub fn int(n: i64) -> Self {
        TropScalar::Fin(q(n))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, TropScalar::Inf)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            TropScalar::Fin(x) => Some(x),
            TropScalar::Inf => None,
        }
    }

    pub fn oplus(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn odot(&self, other: &Self) -> Self {
        match (self, other) {
            (TropScalar::Fin(a), TropScalar::Fin(b)) => TropScalar::Fin(a + b),
            _ => TropScalar::Inf,
        }
    }

    /// Trivialization φ: finite values go to 0.
    pub fn trivialize(&self) -> Self {
        match self {
            TropScalar::Fin(_) => TropScalar::zero(),
            TropScalar::Inf => TropScalar::Inf,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            Some(TropScalar::Inf)
        } else {
            parse_q(t).map(TropScalar::Fin)
        }
    }
}

impl PartialOrd for TropScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropScalar::Fin(a), TropScalar::Fin(b)) => a.cmp(b),
            (TropScalar::Fin(_), TropScalar::Inf) => Ordering::Less,
            (TropScalar::Inf, TropScalar::Fin(_)) => Ordering::Greater,
            (TropScalar::Inf, TropScalar::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::Fin(x) => write!(f, "{}", fmt_q(x)),
            TropScalar::Inf => write!(f, "inf"),
        }
    }
}

impl From<Q> for TropScalar {
    fn from(x: Q) -> Self {
        TropScalar::Fin(x)
    }
}

impl serde::Serialize for TropScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for TropScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TropScalar::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad tropical scalar `{s}`")))
    }
}

/// Serde adaptor: rationals as `"p/q"` strings.
pub mod q_string {
    use super::*;

    pub fn serialize<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        parse_q(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

/// Serde adaptor for `Vec<Q>`.
pub mod qvec_string {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v = <Vec<String> as serde::Deserialize>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_rationals() {
        assert_eq!(parse_q("3/6"), Some(qf(1, 2)));
        assert_eq!(parse_q("-1.25"), Some(qf(-5, 4)));
        assert_eq!(parse_q("7"), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(fmt_q(&qf(-3, 9)), "-1/3");
    }

    #[test]
    fn inf_is_greatest_and_absorbing() {
        let a = TropScalar::int(3);
        assert!(a < TropScalar::Inf);
        assert_eq!(a.oplus(&TropScalar::Inf), a);
        assert_eq!(a.odot(&TropScalar::Inf), TropScalar::Inf);
        assert_eq!(a.odot(&TropScalar::zero()), a);
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer(&[qf(2, 3), qf(4, 3)]);
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(2)]);
        let w = primitive_integer(&[q(-2), q(-2)]);
        assert_eq!(w, vec![BigInt::from(-1), BigInt::from(-1)]);
    }
}
