//! Classical polynomials with coefficients in a valued field, and their tropicalization.

use crate::error::{Error, Result};
use crate::field::{FieldElem, ValuedField};
use crate::poly::{Ambient, ExpVec, TropPoly};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalPoly {
    nvars: usize,
    terms: BTreeMap<ExpVec, FieldElem>,
}

impl ClassicalPoly {
    pub fn zero(nvars: usize) -> Self {
        ClassicalPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExpVec::zero(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExpVec::unit(nvars, i), FieldElem::one());
        p
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (ExpVec, FieldElem)>) -> Self {
        let mut p = Self::zero(nvars);
        for (u, c) in it {
            p.add_term(u, c);
        }
        p
    }

    fn add_term(&mut self, u: ExpVec, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&u) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(u, s);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, FieldElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &ExpVec) -> FieldElem {
        self.terms.get(u).cloned().unwrap_or_else(FieldElem::zero)
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

    pub fn min_exponents(&self) -> Option<ExpVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, u| ExpVec(acc.0.iter().zip(&u.0).map(|(a, b)| *a.min(b)).collect())))
    }

    pub fn add(&self, o: &ClassicalPoly) -> ClassicalPoly {
        let mut p = self.clone();
        for (u, c) in &o.terms {
            p.add_term(u.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> ClassicalPoly {
        ClassicalPoly { nvars: self.nvars, terms: self.terms.iter().map(|(u, c)| (u.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &ClassicalPoly) -> ClassicalPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ClassicalPoly) -> ClassicalPoly {
        let mut p = ClassicalPoly::zero(self.nvars);
        for (u, c) in &self.terms {
            for (v, d) in &o.terms {
                p.add_term(u.add(v), c.mul(d));
            }
        }
        p
    }

    pub fn scale(&self, c: &FieldElem) -> ClassicalPoly {
        ClassicalPoly::from_terms(self.nvars, self.terms.iter().map(|(u, d)| (u.clone(), d.mul(c))))
    }

    pub fn mul_monomial(&self, m: &ExpVec) -> ClassicalPoly {
        ClassicalPoly { nvars: self.nvars, terms: self.terms.iter().map(|(u, c)| (u.add(m), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> ClassicalPoly {
        let mut r = ClassicalPoly::constant(self.nvars, FieldElem::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Prepends x_0 and homogenizes to the top degree.
    pub fn homogenize(&self) -> ClassicalPoly {
        let d = self.max_degree().unwrap_or(0);
        ClassicalPoly {
            nvars: self.nvars + 1,
            terms: self.terms.iter().map(|(u, c)| (u.insert(0, d - u.degree()), c.clone())).collect(),
        }
    }

    /// Divides by the largest monomial dividing every term (clears negative exponents too).
    pub fn clear_monomial(&self) -> ClassicalPoly {
        match self.min_exponents() {
            None => self.clone(),
            Some(m) => ClassicalPoly {
                nvars: self.nvars,
                terms: self.terms.iter().map(|(u, c)| (u.sub(&m), c.clone())).collect(),
            },
        }
    }

    /// x_i ↦ α, dropping variable i.
    pub fn substitute(&self, i: usize, alpha: &FieldElem) -> ClassicalPoly {
        let mut p = ClassicalPoly::zero(self.nvars - 1);
        for (u, c) in &self.terms {
            let e = u.0[i];
            let f = if e >= 0 { alpha.pow(e as u32) } else { alpha.pow((-e) as u32).inv().expect("nonzero α") };
            p.add_term(u.remove(i), c.mul(&f));
        }
        p
    }

    /// x_i ↦ α·x_0 (i ≥ 1), dropping variable i; preserves homogeneity.
    pub fn substitute_projective(&self, i: usize, alpha: &FieldElem) -> ClassicalPoly {
        let mut p = ClassicalPoly::zero(self.nvars - 1);
        for (u, c) in &self.terms {
            let e = u.0[i];
            let mut v = u.remove(i);
            v.0[0] += e;
            p.add_term(v, c.mul(&alpha.pow(e as u32)));
        }
        p
    }

    /// t ↦ t^k in every coefficient.
    pub fn compose_t_power(&self, k: usize) -> ClassicalPoly {
        ClassicalPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(u, c)| (u.clone(), c.compose_power(k))).collect(),
        }
    }

    pub fn tropicalize(&self, field: &ValuedField, ambient: Ambient) -> Result<TropPoly> {
        if ambient.nvars() != self.nvars {
            return Err(Error::LengthMismatch { expected: ambient.nvars(), got: self.nvars });
        }
        let terms = self.terms.iter().map(|(u, c)| {
            let v = field.val(c).finite().cloned().expect("nonzero coefficient");
            (u.clone(), v)
        });
        TropPoly::from_terms(ambient, terms.collect::<Vec<_>>())
    }
}
