//! Valued fields: ℚ with the trivial or a p-adic valuation, and ℚ(t) with the t-adic valuation.

use crate::error::{Error, Result};
use crate::scalar::{fmt_q, q, TropScalar, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;

/// Dense univariate polynomial in t over ℚ, little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly(pub Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(vec![])
    }

    pub fn constant(c: Q) -> Self {
        let mut p = UPoly(vec![c]);
        p.trim();
        p
    }

    /// c·t^k
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        let mut p = UPoly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn lead(&self) -> Option<&Q> {
        self.0.last()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(Q::zero);
            let b = o.0.get(i).cloned().unwrap_or_else(Q::zero);
            v.push(a + b);
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        let mut p = UPoly(self.0.iter().map(|a| a * c).collect());
        p.trim();
        p
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.0.len() - 1;
        let lc = d.0[dd].clone();
        let mut r = self.clone();
        if r.0.len() < d.0.len() {
            return (UPoly::zero(), r);
        }
        let mut quo = vec![Q::zero(); r.0.len() - dd];
        while !r.is_zero() && r.0.len() > dd {
            let k = r.0.len() - 1 - dd;
            let c = r.0.last().unwrap() / &lc;
            for (i, b) in d.0.iter().enumerate() {
                let t = &c * b;
                r.0[i + k] -= t;
            }
            quo[k] = c;
            r.trim();
        }
        let mut qp = UPoly(quo);
        qp.trim();
        (qp, r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.lead().cloned() {
            None => a,
            Some(lc) => a.scale(&(Q::one() / lc)),
        }
    }
}

/// Element of ℚ(t) as num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("division by zero in ℚ(t)".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: UPoly::constant(Q::one()) });
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g);
        let (d, _) = den.divrem(&g);
        let lc = d.lead().cloned().unwrap();
        Ok(RatFunc { num: n.scale(&(Q::one() / &lc)), den: d.scale(&(Q::one() / lc)) })
    }

    pub fn t() -> Self {
        RatFunc { num: UPoly::monomial(Q::one(), 1), den: UPoly::constant(Q::one()) }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    fn as_constant(&self) -> Option<Q> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            Some(self.num.0.first().cloned().unwrap_or_else(Q::zero) / &self.den.0[0])
        } else {
            None
        }
    }

    /// t-adic order; None for zero.
    pub fn ord_t(&self) -> Option<i64> {
        Some(self.num.ord()? as i64 - self.den.ord().unwrap() as i64)
    }

    /// Substitutes t ↦ t^k.
    pub fn compose_power(&self, k: usize) -> RatFunc {
        let up = |p: &UPoly| {
            let mut v = vec![Q::zero(); p.0.len().saturating_sub(1) * k + 1];
            for (i, c) in p.0.iter().enumerate() {
                v[i * k] = c.clone();
            }
            let mut r = UPoly(v);
            r.trim();
            r
        };
        RatFunc::new(up(&self.num), up(&self.den)).expect("nonzero denominator")
    }
}

/// Element of a valued field; ℚ-constants are always stored as `Rat`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(Q),
    Fun(RatFunc),
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem::Rat(Q::zero())
    }

    pub fn one() -> Self {
        FieldElem::Rat(Q::one())
    }

    pub fn int(n: i64) -> Self {
        FieldElem::Rat(q(n))
    }

    pub fn t() -> Self {
        FieldElem::Fun(RatFunc::t())
    }

    fn from_fun(f: RatFunc) -> Self {
        match f.as_constant() {
            Some(c) => FieldElem::Rat(c),
            None => FieldElem::Fun(f),
        }
    }

    fn to_fun(&self) -> RatFunc {
        match self {
            FieldElem::Rat(c) => RatFunc { num: UPoly::constant(c.clone()), den: UPoly::constant(Q::one()) },
            FieldElem::Fun(f) => f.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(c) => c.is_zero(),
            FieldElem::Fun(f) => f.num.is_zero(),
        }
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            _ => {
                let (a, b) = (self.to_fun(), o.to_fun());
                let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
                FieldElem::from_fun(RatFunc::new(num, a.den.mul(&b.den)).unwrap())
            }
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Fun(f) => FieldElem::Fun(RatFunc { num: f.num.neg(), den: f.den.clone() }),
        }
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            _ => {
                let (a, b) = (self.to_fun(), o.to_fun());
                FieldElem::from_fun(RatFunc::new(a.num.mul(&b.num), a.den.mul(&b.den)).unwrap())
            }
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::Invalid("inverse of zero".into()));
        }
        Ok(match self {
            FieldElem::Rat(a) => FieldElem::Rat(Q::one() / a),
            FieldElem::Fun(f) => FieldElem::from_fun(RatFunc::new(f.den.clone(), f.num.clone())?),
        })
    }

    pub fn div(&self, o: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: u32) -> FieldElem {
        let mut r = FieldElem::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// t ↦ t^k.
    pub fn compose_power(&self, k: usize) -> FieldElem {
        match self {
            FieldElem::Rat(_) => self.clone(),
            FieldElem::Fun(f) => FieldElem::from_fun(f.compose_power(k)),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(c) => write!(f, "{}", fmt_q(c)),
            FieldElem::Fun(r) => {
                let show = |p: &UPoly| {
                    let parts: Vec<String> = p
                        .0
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| match i {
                            0 => fmt_q(c),
                            1 => format!("{}*t", fmt_q(c)),
                            _ => format!("{}*t^{i}", fmt_q(c)),
                        })
                        .collect();
                    format!("({})", parts.join(" + "))
                };
                if r.den.degree() == Some(0) {
                    write!(f, "{}", show(&r.num))
                } else {
                    write!(f, "{}/{}", show(&r.num), show(&r.den))
                }
            }
        }
    }
}

fn p_adic_ord(n: &BigInt, p: &BigInt) -> i64 {
    let mut k = 0;
    let mut n = n.abs();
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ValuedField {
    RationalsTrivial,
    RationalsPAdic(u64),
    RationalFunctionsT,
}

impl ValuedField {
    pub fn parse(s: &str) -> Result<ValuedField> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(ValuedField::RationalsTrivial);
        }
        if s == "t-adic" {
            return Ok(ValuedField::RationalFunctionsT);
        }
        if let Some(p) = s.strip_prefix("p-adic:") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Invalid(format!("bad prime in `{s}`")))?;
            if p < 2 || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            return Ok(ValuedField::RationalsPAdic(p));
        }
        Err(Error::Invalid(format!("unknown field `{s}` (trivial | p-adic:<p> | t-adic)")))
    }

    pub fn name(&self) -> String {
        match self {
            ValuedField::RationalsTrivial => "trivial".into(),
            ValuedField::RationalsPAdic(p) => format!("p-adic:{p}"),
            ValuedField::RationalFunctionsT => "t-adic".into(),
        }
    }

    pub fn has_parameter(&self) -> bool {
        matches!(self, ValuedField::RationalFunctionsT)
    }

    pub fn val(&self, x: &FieldElem) -> TropScalar {
        if x.is_zero() {
            return TropScalar::Inf;
        }
        match (self, x) {
            (ValuedField::RationalsTrivial, _) => TropScalar::zero(),
            (ValuedField::RationalsPAdic(p), FieldElem::Rat(c)) => {
                let p = BigInt::from(*p);
                TropScalar::int(p_adic_ord(c.numer(), &p) - p_adic_ord(c.denom(), &p))
            }
            (ValuedField::RationalsPAdic(_), FieldElem::Fun(_)) => {
                panic!("element of ℚ(t) valued p-adically")
            }
            (ValuedField::RationalFunctionsT, FieldElem::Rat(_)) => TropScalar::zero(),
            (ValuedField::RationalFunctionsT, FieldElem::Fun(f)) => TropScalar::int(f.ord_t().unwrap()),
        }
    }

    /// c·π^a for a uniformizer π and a random unit c; `a` must be an integer (0 for the trivial valuation).
    pub fn random_of_valuation<R: Rng>(&self, a: i64, rng: &mut R) -> Result<FieldElem> {
        let unit = |rng: &mut R, avoid: Option<u64>| loop {
            let n: i64 = rng.gen_range(-1000..=1000);
            let d: i64 = rng.gen_range(1..=1000);
            if n == 0 {
                continue;
            }
            if let Some(p) = avoid {
                let p = p as i64;
                if n % p == 0 || d % p == 0 {
                    continue;
                }
            }
            break Q::new(BigInt::from(n), BigInt::from(d));
        };
        match self {
            ValuedField::RationalsTrivial => {
                if a != 0 {
                    return Err(Error::Invalid("the trivial valuation only takes the value 0".into()));
                }
                Ok(FieldElem::Rat(unit(rng, None)))
            }
            ValuedField::RationalsPAdic(p) => {
                let c = unit(rng, Some(*p));
                let pp = Q::from_integer(BigInt::from(*p));
                let pw = if a >= 0 {
                    num_traits::pow(pp, a as usize)
                } else {
                    Q::one() / num_traits::pow(pp, (-a) as usize)
                };
                Ok(FieldElem::Rat(c * pw))
            }
            ValuedField::RationalFunctionsT => {
                let c = unit(rng, None);
                let tp = if a >= 0 {
                    FieldElem::t().pow(a as u32)
                } else {
                    FieldElem::t().pow((-a) as u32).inv()?
                };
                Ok(FieldElem::Rat(c).mul(&tp))
            }
        }
    }
}
