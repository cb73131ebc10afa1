//! Tropical (Laurent) polynomials over ℝ̄ with exact rational coefficients.

use crate::error::{Error, Result};
use crate::scalar::{fmt_q, q, TropScalar, Q};
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a monomial x^u.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn add(&self, o: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, o: &ExpVec) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn dot(&self, w: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, x) in self.0.iter().zip(w) {
            if *e != 0 {
                s += x * q(*e);
            }
        }
        s
    }

    pub fn as_q(&self) -> Vec<Q> {
        self.0.iter().map(|&e| q(e)).collect()
    }

    pub fn remove(&self, i: usize) -> ExpVec {
        let mut v = self.0.clone();
        v.remove(i);
        ExpVec(v)
    }

    pub fn insert(&self, i: usize, e: i64) -> ExpVec {
        let mut v = self.0.clone();
        v.insert(i, e);
        ExpVec(v)
    }
}

/// All nonnegative exponent vectors of total degree `d` in `n` variables, in descending lex order.
pub fn monomials_of_degree(n: usize, d: i64) -> Vec<ExpVec> {
    fn rec(n: usize, d: i64, prefix: &mut Vec<i64>, out: &mut Vec<ExpVec>) {
        if n == 1 {
            prefix.push(d);
            out.push(ExpVec(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(ExpVec(vec![]));
        }
        return out;
    }
    if d < 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Ambient {
    Affine(usize),
    Laurent(usize),
    /// Homogeneous coordinates x_0..x_n; the payload is n+1.
    Projective(usize),
}

impl Ambient {
    pub fn nvars(&self) -> usize {
        match *self {
            Ambient::Affine(n) | Ambient::Laurent(n) | Ambient::Projective(n) => n,
        }
    }

    pub fn with_nvars(&self, n: usize) -> Ambient {
        match self {
            Ambient::Affine(_) => Ambient::Affine(n),
            Ambient::Laurent(_) => Ambient::Laurent(n),
            Ambient::Projective(_) => Ambient::Projective(n),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Ambient::Affine(_) => "affine",
            Ambient::Laurent(_) => "laurent",
            Ambient::Projective(_) => "projective",
        }
    }
}

/// Default variable names: x,y,z for up to three affine variables, x1.. otherwise, x0.. for projective.
pub fn default_names(ambient: Ambient) -> Vec<String> {
    let n = ambient.nvars();
    match ambient {
        Ambient::Projective(_) => (0..n).map(|i| format!("x{i}")).collect(),
        _ if n == 1 => vec!["x".into()],
        _ if n <= 3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// Monomial term orders in the reversed convention: x^u ≺ x^0 for u ≠ 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TermOrder {
    /// x^u ≺ x^v iff the first nonzero entry of u−v is positive.
    Lex,
    /// Higher degree is smaller; ties: x^u ≺ x^v iff the last nonzero entry of u−v is negative.
    RevLex,
}

impl TermOrder {
    /// `Less` means x^u ≺ x^v.
    pub fn compare(&self, u: &ExpVec, v: &ExpVec) -> Ordering {
        match self {
            TermOrder::Lex => {
                for (a, b) in u.0.iter().zip(&v.0) {
                    if a != b {
                        return if a > b { Ordering::Less } else { Ordering::Greater };
                    }
                }
                Ordering::Equal
            }
            TermOrder::RevLex => {
                let (du, dv) = (u.degree(), v.degree());
                if du != dv {
                    return if du > dv { Ordering::Less } else { Ordering::Greater };
                }
                for (a, b) in u.0.iter().zip(&v.0).rev() {
                    if a != b {
                        return if a < b { Ordering::Less } else { Ordering::Greater };
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn parse(s: &str) -> Option<TermOrder> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lex" => Some(TermOrder::Lex),
            "revlex" | "grevlex" => Some(TermOrder::RevLex),
            _ => None,
        }
    }
}

/// Tropical polynomial. The empty term map is the ∞ polynomial; stored coefficients are finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropPoly {
    ambient: Ambient,
    terms: BTreeMap<ExpVec, Q>,
}

impl TropPoly {
    pub fn infinity(ambient: Ambient) -> Self {
        TropPoly { ambient, terms: BTreeMap::new() }
    }

    pub fn monomial(ambient: Ambient, u: ExpVec, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(u, c);
        TropPoly { ambient, terms }
    }

    pub fn constant(ambient: Ambient, c: Q) -> Self {
        Self::monomial(ambient, ExpVec::zero(ambient.nvars()), c)
    }

    /// Builds from terms, keeping the minimum on repeated exponents.
    pub fn from_terms(ambient: Ambient, it: impl IntoIterator<Item = (ExpVec, Q)>) -> Result<Self> {
        let mut p = TropPoly::infinity(ambient);
        for (u, c) in it {
            if u.len() != ambient.nvars() {
                return Err(Error::LengthMismatch { expected: ambient.nvars(), got: u.len() });
            }
            if !matches!(ambient, Ambient::Laurent(_)) && !u.is_nonneg() {
                return Err(Error::AmbientMismatch(format!("negative exponent in {} ambient", ambient.kind())));
            }
            p.insert_min(u, c);
        }
        if let Ambient::Projective(_) = ambient {
            if !p.is_homogeneous() {
                return Err(Error::AmbientMismatch("projective polynomial must be homogeneous".into()));
            }
        }
        Ok(p)
    }

    /// Builds without ambient validation; callers guarantee the invariants.
    fn insert_min(&mut self, u: ExpVec, c: Q) {
        match self.terms.get_mut(&u) {
            Some(old) => {
                if c < *old {
                    *old = c;
                }
            }
            None => {
                self.terms.insert(u, c);
            }
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, Q> {
        &self.terms
    }

    pub fn is_infinity(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn support(&self) -> Vec<ExpVec> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, u: &ExpVec) -> TropScalar {
        match self.terms.get(u) {
            Some(c) => TropScalar::Fin(c.clone()),
            None => TropScalar::Inf,
        }
    }

    pub fn is_boolean(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|u| u.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|u| u.degree()).max()
    }

    pub fn min_coeff(&self) -> Option<&Q> {
        self.terms.values().min()
    }

    /// Shift so the minimal coefficient is 0.
    pub fn normalized(&self) -> TropPoly {
        match self.min_coeff().cloned() {
            None => self.clone(),
            Some(m) => TropPoly {
                ambient: self.ambient,
                terms: self.terms.iter().map(|(u, c)| (u.clone(), c - &m)).collect(),
            },
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.nvars() {
            Err(Error::LengthMismatch { expected: self.nvars(), got: n })
        } else {
            Ok(())
        }
    }

    /// f(w) = min_u (c_u + w·u).
    pub fn eval(&self, w: &[Q]) -> Result<TropScalar> {
        self.check_len(w.len())?;
        Ok(match self.terms.iter().map(|(u, c)| c + u.dot(w)).min() {
            Some(v) => TropScalar::Fin(v),
            None => TropScalar::Inf,
        })
    }

    /// Boolean polynomial of the terms attaining f(w).
    pub fn initial_form(&self, w: &[Q]) -> Result<TropPoly> {
        self.check_len(w.len())?;
        let vals: Vec<(&ExpVec, Q)> = self.terms.iter().map(|(u, c)| (u, c + u.dot(w))).collect();
        let m = match vals.iter().map(|(_, v)| v).min() {
            None => return Ok(self.clone()),
            Some(m) => m.clone(),
        };
        let terms = vals.into_iter().filter(|(_, v)| *v == m).map(|(u, _)| (u.clone(), Q::zero())).collect();
        Ok(TropPoly { ambient: self.ambient, terms })
    }

    /// in_v(in_w(f)), which equals in_{w+εv}(f) for all small ε > 0.
    pub fn initial_form_composed(&self, w: &[Q], v: &[Q]) -> Result<TropPoly> {
        self.initial_form(w)?.initial_form(v)
    }

    /// The ≺-minimal monomial of the support.
    pub fn initial_term_order(&self, order: TermOrder) -> Result<ExpVec> {
        if matches!(self.ambient, Ambient::Laurent(_)) {
            return Err(Error::AmbientMismatch("term orders need an affine or projective ambient".into()));
        }
        self.terms
            .keys()
            .min_by(|a, b| order.compare(a, b))
            .cloned()
            .ok_or(Error::InfinityPolynomial)
    }

    /// f̃ = ⊕ c_u x_0^{d−|u|} x^u with x_0 prepended.
    pub fn homogenize(&self) -> Result<TropPoly> {
        if !matches!(self.ambient, Ambient::Affine(_)) {
            return Err(Error::AmbientMismatch("homogenize needs an affine polynomial".into()));
        }
        let d = self.max_degree().unwrap_or(0);
        self.homogenize_to(d)
    }

    /// Homogenization in a prescribed degree `d ≥ deg f`.
    pub fn homogenize_to(&self, d: i64) -> Result<TropPoly> {
        if !matches!(self.ambient, Ambient::Affine(_)) {
            return Err(Error::AmbientMismatch("homogenize needs an affine polynomial".into()));
        }
        if self.max_degree().unwrap_or(0) > d {
            return Err(Error::Invalid(format!("degree {d} is below the polynomial degree")));
        }
        let amb = Ambient::Projective(self.nvars() + 1);
        let terms = self.terms.iter().map(|(u, c)| (u.insert(0, d - u.degree()), c.clone())).collect();
        Ok(TropPoly { ambient: amb, terms })
    }

    /// Substitutes x_0 ↦ 0.
    pub fn dehomogenize(&self) -> Result<TropPoly> {
        if !matches!(self.ambient, Ambient::Projective(_)) {
            return Err(Error::AmbientMismatch("dehomogenize needs a projective polynomial".into()));
        }
        let amb = Ambient::Affine(self.nvars() - 1);
        let mut p = TropPoly::infinity(amb);
        for (u, c) in &self.terms {
            p.insert_min(u.remove(0), c.clone());
        }
        Ok(p)
    }

    /// f|_{x_i = a}: coefficient of x^{u'} is min over u_i of c + u_i·a.
    pub fn specialize(&self, i: usize, a: &TropScalar) -> Result<TropPoly> {
        if i >= self.nvars() {
            return Err(Error::Invalid(format!("variable index {i} out of range")));
        }
        let amb = self.ambient.with_nvars(self.nvars() - 1);
        let mut p = TropPoly::infinity(amb);
        for (u, c) in &self.terms {
            let e = u.0[i];
            match a {
                TropScalar::Inf => {
                    if e < 0 {
                        return Err(Error::Invalid("specialization at ∞ with a negative exponent".into()));
                    }
                    if e == 0 {
                        p.insert_min(u.remove(i), c.clone());
                    }
                }
                TropScalar::Fin(a) => p.insert_min(u.remove(i), c + a * q(e)),
            }
        }
        Ok(p)
    }

    /// Homogeneous specialization x_i ↦ a ⊙ x_0 (i ≥ 1) of a projective polynomial.
    pub fn specialize_projective(&self, i: usize, a: &TropScalar) -> Result<TropPoly> {
        if !matches!(self.ambient, Ambient::Projective(_)) {
            return Err(Error::AmbientMismatch("projective specialization needs a projective polynomial".into()));
        }
        if i == 0 || i >= self.nvars() {
            return Err(Error::Invalid(format!("variable index {i} must be in 1..{}", self.nvars())));
        }
        let amb = Ambient::Projective(self.nvars() - 1);
        let mut p = TropPoly::infinity(amb);
        for (u, c) in &self.terms {
            let e = u.0[i];
            let mut v = u.remove(i);
            match a {
                TropScalar::Inf => {
                    if e == 0 {
                        p.insert_min(v, c.clone());
                    }
                }
                TropScalar::Fin(a) => {
                    v.0[0] += e;
                    p.insert_min(v, c + a * q(e));
                }
            }
        }
        Ok(p)
    }

    pub fn trivialize(&self) -> TropPoly {
        TropPoly {
            ambient: self.ambient,
            terms: self.terms.keys().map(|u| (u.clone(), Q::zero())).collect(),
        }
    }

    fn same_ambient(&self, o: &TropPoly) -> Result<()> {
        if self.ambient != o.ambient {
            Err(Error::AmbientMismatch(format!("{:?} vs {:?}", self.ambient, o.ambient)))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &TropPoly) -> Result<TropPoly> {
        self.same_ambient(o)?;
        let mut p = self.clone();
        for (u, c) in &o.terms {
            p.insert_min(u.clone(), c.clone());
        }
        if let Ambient::Projective(_) = self.ambient {
            if !p.is_homogeneous() {
                return Err(Error::AmbientMismatch("sum of projective polynomials of different degrees".into()));
            }
        }
        Ok(p)
    }

    pub fn mul(&self, o: &TropPoly) -> Result<TropPoly> {
        self.same_ambient(o)?;
        let mut p = TropPoly::infinity(self.ambient);
        for (u, c) in &self.terms {
            for (v, d) in &o.terms {
                p.insert_min(u.add(v), c + d);
            }
        }
        Ok(p)
    }

    pub fn scalar_mul(&self, c: &TropScalar) -> TropPoly {
        match c {
            TropScalar::Inf => TropPoly::infinity(self.ambient),
            TropScalar::Fin(c) => TropPoly {
                ambient: self.ambient,
                terms: self.terms.iter().map(|(u, d)| (u.clone(), d + c)).collect(),
            },
        }
    }

    pub fn mul_monomial(&self, u: &ExpVec) -> TropPoly {
        TropPoly {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(v, c)| (v.add(u), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> TropPoly {
        let mut r = TropPoly::constant(self.ambient, Q::zero());
        for _ in 0..k {
            r = r.mul(self).expect("same ambient");
        }
        r
    }

    /// Re-tags the ambient without touching terms; fails if the terms do not fit.
    pub fn with_ambient(&self, ambient: Ambient) -> Result<TropPoly> {
        TropPoly::from_terms(ambient, self.terms.clone())
    }

    /// Terms sorted by descending graded-lex order (the canonical print order).
    pub fn sorted_terms(&self) -> Vec<(&ExpVec, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        v
    }

    /// Symbolic form, e.g. `x^2 ⊕ 1⊙x ⊕ 0`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "inf".into();
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(u, c)| {
                let m = monomial_string(u, names);
                match (m.is_empty(), c.is_zero()) {
                    (true, _) => fmt_q(c),
                    (false, true) => m,
                    (false, false) => format!("{}⊙{}", fmt_q(c), m),
                }
            })
            .collect();
        parts.join(" ⊕ ")
    }

    /// Classical min-plus form, e.g. `min(2x, 1+x, 0)`.
    pub fn min_syntax_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "inf".into();
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(u, c)| {
                let mut s = String::new();
                if !c.is_zero() || u.0.iter().all(|&e| e == 0) {
                    s.push_str(&fmt_q(c));
                }
                for (e, name) in u.0.iter().zip(names) {
                    if *e == 0 {
                        continue;
                    }
                    let mag = e.abs();
                    let body = if mag == 1 { name.clone() } else { format!("{mag}{name}") };
                    if s.is_empty() {
                        if *e < 0 {
                            s.push('-');
                        }
                    } else {
                        s.push(if *e < 0 { '-' } else { '+' });
                    }
                    s.push_str(&body);
                }
                s
            })
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("min({})", parts.join(", "))
        }
    }
}

fn monomial_string(u: &ExpVec, names: &[String]) -> String {
    let mut s = String::new();
    for (e, name) in u.0.iter().zip(names) {
        match *e {
            0 => {}
            1 => s.push_str(name),
            e => s.push_str(&format!("{name}^{e}")),
        }
    }
    s
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_names(self.ambient)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    fn e(v: &[i64]) -> ExpVec {
        ExpVec(v.to_vec())
    }

    fn conic() -> TropPoly {
        let a = Ambient::Projective(3);
        TropPoly::from_terms(
            a,
            vec![(e(&[1, 1, 0]), q(0)), (e(&[1, 0, 1]), q(0)), (e(&[0, 1, 1]), q(0)), (e(&[0, 0, 2]), q(1))],
        )
        .unwrap()
    }

    #[test]
    fn eval_conic_at_origin() {
        assert_eq!(conic().eval(&[q(0), q(0), q(0)]).unwrap(), TropScalar::int(0));
        assert_eq!(TropPoly::infinity(Ambient::Affine(1)).eval(&[q(3)]).unwrap(), TropScalar::Inf);
    }

    #[test]
    fn initial_form_of_conic() {
        let f = conic().initial_form(&[q(0), q(0), q(1)]).unwrap();
        assert_eq!(f, TropPoly::monomial(Ambient::Projective(3), e(&[1, 1, 0]), q(0)));
    }

    #[test]
    fn composed_initial_forms() {
        let a = Ambient::Affine(2);
        let f = TropPoly::from_terms(a, vec![(e(&[1, 0]), q(0)), (e(&[0, 1]), q(0)), (e(&[0, 0]), q(0))]).unwrap();
        let g = f.initial_form_composed(&[q(0), q(0)], &[q(1), q(0)]).unwrap();
        let want = TropPoly::from_terms(a, vec![(e(&[0, 1]), q(0)), (e(&[0, 0]), q(0))]).unwrap();
        assert_eq!(g, want);

        let b = Ambient::Affine(1);
        let h = TropPoly::from_terms(b, vec![(e(&[2]), q(0)), (e(&[1]), q(0)), (e(&[0]), q(0))]).unwrap();
        let g = h.initial_form_composed(&[q(0)], &[q(-1)]).unwrap();
        assert_eq!(g, TropPoly::monomial(b, e(&[2]), q(0)));
    }

    #[test]
    fn lex_chain() {
        let o = TermOrder::Lex;
        let chain = [e(&[2, 0, 0]), e(&[1, 2, 0]), e(&[0, 1, 0]), e(&[0, 0, 2]), e(&[0, 0, 0])];
        for w in chain.windows(2) {
            assert_eq!(o.compare(&w[0], &w[1]), Ordering::Less, "{:?} {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn revlex_chain() {
        let o = TermOrder::RevLex;
        let chain = [e(&[0, 0, 3]), e(&[0, 2, 0]), e(&[1, 0, 1]), e(&[0, 0, 0])];
        for w in chain.windows(2) {
            assert_eq!(o.compare(&w[0], &w[1]), Ordering::Less, "{:?} {:?}", w[0], w[1]);
        }
        let x0 = e(&[1, 0, 0]);
        let x1 = e(&[0, 1, 0]);
        let x2 = e(&[0, 0, 1]);
        assert_eq!(o.compare(&x0, &x1), Ordering::Less);
        assert_eq!(o.compare(&x1, &x2), Ordering::Less);
    }

    #[test]
    fn specialize_examples() {
        let a = Ambient::Affine(3);
        let f = TropPoly::from_terms(a, vec![(e(&[1, 0, 1]), q(0)), (e(&[0, 1, 0]), q(0))]).unwrap();
        let g = f.specialize(2, &TropScalar::zero()).unwrap();
        let want = TropPoly::from_terms(Ambient::Affine(2), vec![(e(&[1, 0]), q(0)), (e(&[0, 1]), q(0))]).unwrap();
        assert_eq!(g, want);

        let b = Ambient::Affine(1);
        let h = TropPoly::from_terms(b, vec![(e(&[2]), q(0)), (e(&[1]), q(1)), (e(&[0]), q(3))]).unwrap();
        let s = h.specialize(0, &TropScalar::int(1)).unwrap();
        assert_eq!(s, TropPoly::constant(Ambient::Affine(0), q(2)));

        let xy = TropPoly::from_terms(Ambient::Affine(2), vec![(e(&[1, 0]), q(0)), (e(&[0, 1]), q(0))]).unwrap();
        let s = xy.specialize(1, &TropScalar::Inf).unwrap();
        assert_eq!(s, TropPoly::monomial(Ambient::Affine(1), e(&[1]), q(0)));
    }

    #[test]
    fn homogenize_round_trip() {
        let a = Ambient::Affine(1);
        let f = TropPoly::from_terms(a, vec![(e(&[1]), q(0)), (e(&[0]), q(0))]).unwrap();
        let h = f.homogenize().unwrap();
        let want =
            TropPoly::from_terms(Ambient::Projective(2), vec![(e(&[0, 1]), q(0)), (e(&[1, 0]), q(0))]).unwrap();
        assert_eq!(h, want);
        assert_eq!(h.dehomogenize().unwrap(), f);
    }

    #[test]
    fn product_example() {
        let a = Ambient::Affine(1);
        let f = TropPoly::from_terms(a, vec![(e(&[2]), q(0)), (e(&[1]), q(0)), (e(&[0]), q(0))]).unwrap();
        let g = TropPoly::from_terms(a, vec![(e(&[1]), q(0)), (e(&[0]), q(1))]).unwrap();
        let p = f.mul(&g).unwrap();
        let want =
            TropPoly::from_terms(a, vec![(e(&[3]), q(0)), (e(&[2]), q(0)), (e(&[1]), q(0)), (e(&[0]), q(1))]).unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn printing_is_canonical() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(conic().display_with(&names), "xy ⊕ xz ⊕ yz ⊕ 1⊙z^2");
        let a = Ambient::Affine(1);
        let f = TropPoly::from_terms(a, vec![(e(&[3]), q(0)), (e(&[2]), q(1)), (e(&[1]), q(0)), (e(&[0]), q(1))])
            .unwrap();
        assert_eq!(f.min_syntax_with(&["x".to_string()]), "min(3x, 1+2x, x, 1)");
        let g = TropPoly::monomial(Ambient::Laurent(1), e(&[-2]), qf(1, 2));
        assert_eq!(g.min_syntax_with(&["x".to_string()]), "1/2-2x");
    }
}
