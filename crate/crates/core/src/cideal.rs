//! Homogeneous classical ideals over a valued field, stored degree by degree as row-reduced spans.

use crate::classical::ClassicalPoly;
use crate::error::{Error, Result};
use crate::field::{FieldElem, ValuedField};
use crate::linalg::{rref, subspace_supported_on, Matrix};
use crate::matroid::VMatroid;
use crate::poly::{monomials_of_degree, ExpVec};
use std::collections::HashMap;

/// `parts[d]` is a row-reduced basis of I_d in the basis `monomials_of_degree(nvars, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalIdeal {
    nvars: usize,
    parts: Vec<Matrix<FieldElem>>,
}

fn index_map(mons: &[ExpVec]) -> HashMap<ExpVec, usize> {
    mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

fn to_row(p: &ClassicalPoly, idx: &HashMap<ExpVec, usize>, len: usize) -> Vec<FieldElem> {
    let mut row = vec![FieldElem::zero(); len];
    for (u, c) in p.terms() {
        row[idx[u]] = c.clone();
    }
    row
}

impl ClassicalIdeal {
    /// The ideal generated by homogeneous polynomials, up to degree `top`.
    pub fn from_generators(gens: &[ClassicalPoly], nvars: usize, top: usize) -> Result<Self> {
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, got: g.nvars() });
            }
            if !g.is_homogeneous() {
                return Err(Error::AmbientMismatch("generators must be homogeneous".into()));
            }
            if g.terms().keys().any(|u| !u.is_nonneg()) {
                return Err(Error::AmbientMismatch("negative exponent in a homogeneous generator".into()));
            }
        }
        let gens: Vec<&ClassicalPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
        let mut parts = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mons = monomials_of_degree(nvars, d as i64);
            let idx = index_map(&mons);
            let mut rows = Vec::new();
            for g in &gens {
                let e = g.max_degree().unwrap();
                if e > d as i64 {
                    continue;
                }
                for m in monomials_of_degree(nvars, d as i64 - e) {
                    rows.push(to_row(&g.mul_monomial(&m), &idx, mons.len()));
                }
            }
            rref(&mut rows);
            parts.push(rows);
        }
        Ok(ClassicalIdeal { nvars, parts })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn top(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn part(&self, d: usize) -> &Matrix<FieldElem> {
        &self.parts[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.parts[d].len()
    }

    /// Row-space elements of degree d as polynomials.
    pub fn polys(&self, d: usize) -> Vec<ClassicalPoly> {
        let mons = monomials_of_degree(self.nvars, d as i64);
        self.parts[d]
            .iter()
            .map(|r| ClassicalPoly::from_terms(self.nvars, mons.iter().cloned().zip(r.iter().cloned())))
            .collect()
    }

    /// All rows, as generators of the ideal they span.
    pub fn all_polys(&self) -> Vec<ClassicalPoly> {
        (0..=self.top()).flat_map(|d| self.polys(d)).collect()
    }

    /// (I : x_i)_d = {f : x_i f ∈ I_{d+1}} for d < top.
    fn colon_var_part(&self, i: usize, d: usize) -> Matrix<FieldElem> {
        let up = monomials_of_degree(self.nvars, d as i64 + 1);
        let keep: Vec<bool> = up.iter().map(|u| u.0[i] > 0).collect();
        let sub = subspace_supported_on(&self.parts[d + 1], &keep);
        let mons = monomials_of_degree(self.nvars, d as i64);
        let idx = index_map(&mons);
        let unit = ExpVec::unit(self.nvars, i);
        let mut rows: Matrix<FieldElem> = sub
            .iter()
            .map(|r| {
                let mut row = vec![FieldElem::zero(); mons.len()];
                for (j, c) in r.iter().enumerate() {
                    if !c.is_zero() {
                        row[idx[&up[j].sub(&unit)]] = c.clone();
                    }
                }
                row
            })
            .collect();
        rows.extend(self.parts[d].iter().cloned());
        rref(&mut rows);
        rows
    }

    /// Saturates by each variable in `vars` until the degree-wise chain is stationary.
    /// Returns the ideal (same top) and the largest degree at which (J : x_i)_d = J_d holds for
    /// every i, which is where saturation is verified.
    pub fn saturate(&self, vars: &[usize]) -> (ClassicalIdeal, Option<usize>) {
        let mut cur = self.clone();
        loop {
            let mut changed = false;
            for &i in vars {
                for d in (0..cur.top()).rev() {
                    let new = cur.colon_var_part(i, d);
                    if new.len() != cur.parts[d].len() {
                        cur.parts[d] = new;
                        changed = true;
                    }
                }
                // restore closure under multiplication after enlarging low degrees
                let gens = cur.all_polys();
                cur = ClassicalIdeal::from_generators(&gens, cur.nvars, cur.top()).expect("homogeneous rows");
            }
            if !changed {
                break;
            }
        }
        let verified = (0..cur.top()).take_while(|&d| vars.iter().all(|&i| cur.colon_var_part(i, d).len() == cur.parts[d].len())).last();
        (cur, verified)
    }

    /// (I : m)_d for d ≤ top − deg m.
    pub fn colon_monomial(&self, m: &ExpVec) -> Result<ClassicalIdeal> {
        let k = m.degree();
        if k < 0 || !m.is_nonneg() || m.len() != self.nvars {
            return Err(Error::Invalid("colon needs a monomial in the ideal's variables".into()));
        }
        let k = k as usize;
        if k > self.top() {
            return Err(Error::DegreeBound(format!("colon by a degree-{k} monomial exhausts the truncation")));
        }
        let mut parts = Vec::new();
        for d in 0..=self.top() - k {
            let up = monomials_of_degree(self.nvars, (d + k) as i64);
            let keep: Vec<bool> = up.iter().map(|u| m.divides(u)).collect();
            let sub = subspace_supported_on(&self.parts[d + k], &keep);
            let mons = monomials_of_degree(self.nvars, d as i64);
            let idx = index_map(&mons);
            let mut rows: Matrix<FieldElem> = sub
                .iter()
                .map(|r| {
                    let mut row = vec![FieldElem::zero(); mons.len()];
                    for (j, c) in r.iter().enumerate() {
                        if !c.is_zero() {
                            row[idx[&up[j].sub(m)]] = c.clone();
                        }
                    }
                    row
                })
                .collect();
            rref(&mut rows);
            parts.push(rows);
        }
        Ok(ClassicalIdeal { nvars: self.nvars, parts })
    }

    /// I ∩ K[x_j : j ∈ keep], re-indexed to the kept variables.
    pub fn restrict_vars(&self, keep: &[usize]) -> ClassicalIdeal {
        let mut parts = Vec::new();
        for d in 0..=self.top() {
            let mons = monomials_of_degree(self.nvars, d as i64);
            let mask: Vec<bool> = mons.iter().map(|u| (0..self.nvars).all(|j| u.0[j] == 0 || keep.contains(&j))).collect();
            let sub = subspace_supported_on(&self.parts[d], &mask);
            let small = monomials_of_degree(keep.len(), d as i64);
            let idx = index_map(&small);
            let mut rows: Matrix<FieldElem> = sub
                .iter()
                .map(|r| {
                    let mut row = vec![FieldElem::zero(); small.len()];
                    for (j, c) in r.iter().enumerate() {
                        if !c.is_zero() {
                            let u = ExpVec(keep.iter().map(|&k| mons[j].0[k]).collect());
                            row[idx[&u]] = c.clone();
                        }
                    }
                    row
                })
                .collect();
            rref(&mut rows);
            parts.push(rows);
        }
        ClassicalIdeal { nvars: keep.len(), parts }
    }

    /// x_i ↦ α·x_0 (i ≥ 1) applied to every stored row, regenerated up to the same top.
    pub fn substitute_projective(&self, i: usize, alpha: &FieldElem) -> Result<ClassicalIdeal> {
        let gens: Vec<ClassicalPoly> = self.all_polys().iter().map(|p| p.substitute_projective(i, alpha)).collect();
        ClassicalIdeal::from_generators(&gens, self.nvars - 1, self.top())
    }

    /// x_i ↦ 0 applied to every stored row.
    pub fn substitute_zero(&self, i: usize) -> Result<ClassicalIdeal> {
        let gens: Vec<ClassicalPoly> = self.all_polys().iter().map(|p| p.substitute(i, &FieldElem::zero())).collect();
        ClassicalIdeal::from_generators(&gens, self.nvars - 1, self.top())
    }

    pub fn compose_t_power(&self, k: usize) -> ClassicalIdeal {
        ClassicalIdeal {
            nvars: self.nvars,
            parts: self.parts.iter().map(|m| m.iter().map(|r| r.iter().map(|c| c.compose_power(k)).collect()).collect()).collect(),
        }
    }

    pub fn truncate(&self, top: usize) -> ClassicalIdeal {
        ClassicalIdeal { nvars: self.nvars, parts: self.parts[..=top.min(self.top())].to_vec() }
    }

    pub fn matroid(&self, d: usize, field: &ValuedField) -> Result<VMatroid> {
        VMatroid::from_rowspace(&self.parts[d], monomials_of_degree(self.nvars, d as i64), field)
    }
}
