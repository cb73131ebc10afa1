//! Multiplicities of maximal cells and weighted varieties of truncations.

use crate::complex::{prevariety, PolyComplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::ideal::IdealTruncation;
use crate::lattice::{integer_kernel, primitive, IVec};
use crate::matroid::{bits, Mask};
use crate::poly::{ExpVec, TropPoly};
use crate::polyhedron::Polyhedron;
use crate::scalar::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub const VARIETY_LABEL: &str = "prevariety of circuits ≤ D";

fn qdot(u: &ExpVec, v: &[BigInt]) -> BigInt {
    u.0.iter().zip(v).map(|(a, b)| BigInt::from(*a) * b).sum()
}

/// Primitive normal ν ∈ ℤ^{n+1} to span(σ) + ℝ1 for a codimension-one chart cell σ.
fn cell_normal(cell: &Polyhedron) -> Result<IVec> {
    let n = cell.ambient_dim();
    let mut rows: Vec<IVec> = vec![vec![BigInt::one(); n + 1]];
    for v in cell.direction_space() {
        let p = primitive(&v)?;
        rows.push(std::iter::once(BigInt::zero()).chain(p).collect());
    }
    let k = integer_kernel(&rows, n + 1);
    if k.len() != 1 {
        return Err(Error::Unsupported(format!("cell of codimension {} (only codimension one is handled)", k.len())));
    }
    Ok(k.into_iter().next().unwrap())
}

/// Degree of the zero-dimensional ideal in_w(I) ∩ S_0 for w in the relative interior of σ.
///
/// For codimension one, S_0 is a Laurent ring in y = x^ν; every element of in_w(I) splits into
/// classes of monomials differing by multiples of ν, and the degree is the smallest ν-width of a
/// class circuit. Points of a zero-dimensional ideal in higher codimension use the saturated
/// initial ideal instead.
pub fn cell_multiplicity(ideal: &IdealTruncation, cell: &Polyhedron) -> Result<u64> {
    let n = ideal.chart_dim();
    if cell.ambient_dim() != n {
        return Err(Error::LengthMismatch { expected: n, got: cell.ambient_dim() });
    }
    let w = cell.relint_point().to_vec();
    let codim = n - cell.dim();
    if codim == 0 {
        let j = ideal.initial_ideal(&w)?;
        return if j.parts().iter().all(|m| m.rank() == m.len()) {
            Ok(1)
        } else {
            Err(Error::Unsupported("full-dimensional cell of a nonzero ideal".into()))
        };
    }
    if codim > 1 {
        if cell.dim() == 0 {
            return ideal.multiplicity_zero_dim(&w);
        }
        return Err(Error::Unsupported(format!("cell of codimension {codim} (only codimension one is handled)")));
    }
    let nu = cell_normal(cell)?;
    let nn: BigInt = nu.iter().map(|x| x * x).sum();
    let j = ideal.initial_ideal(&w)?;
    let mut best: Option<BigInt> = None;
    for m in j.parts() {
        let mut classes: BTreeMap<Vec<Q>, Mask> = BTreeMap::new();
        for (i, u) in m.ground().iter().enumerate() {
            let t = Q::new(qdot(u, &nu), nn.clone());
            let key: Vec<Q> = u.0.iter().zip(&nu).map(|(a, b)| Q::from_integer(BigInt::from(*a)) - &t * Q::from_integer(b.clone())).collect();
            *classes.entry(key).or_insert(0) |= 1 << i;
        }
        for mask in classes.values() {
            if m.rank_of(*mask) == bits(*mask).count() {
                continue;
            }
            let r = m.restrict(*mask)?;
            for c in r.circuits()? {
                let pos: Vec<BigInt> = bits(c.support()).map(|x| qdot(&r.ground()[x], &nu)).collect();
                let width = (pos.iter().max().unwrap() - pos.iter().min().unwrap()) / &nn;
                if best.as_ref().map_or(true, |b| width < *b) {
                    best = Some(width);
                }
            }
        }
        if best.as_ref().is_some_and(|b| b.is_zero()) {
            break;
        }
    }
    let best = best.ok_or_else(|| {
        Error::DegreeBound(format!("no relation of in_w(I) ∩ S_0 up to degree {}", ideal.degree_bound()))
    })?;
    best.abs().to_u64().ok_or_else(|| Error::Invalid("multiplicity overflow".into()))
}

/// A Laurent-normal form of a chart polynomial: exponents shifted to componentwise minimum 0,
/// coefficients shifted to minimum 0. Polynomials with equal keys have equal hypersurfaces.
fn hypersurface_key(f: &TropPoly) -> Vec<(ExpVec, Q)> {
    let n = f.nvars();
    let mut lo = vec![i64::MAX; n];
    for u in f.terms().keys() {
        for (l, x) in lo.iter_mut().zip(&u.0) {
            *l = (*l).min(*x);
        }
    }
    let c0 = f.min_coeff().cloned().unwrap_or_else(Q::zero);
    f.terms().iter().map(|(u, c)| (ExpVec(u.0.iter().zip(&lo).map(|(a, b)| a - b).collect()), c - &c0)).collect()
}

#[derive(Clone, Debug)]
pub struct Variety {
    pub support: PolyComplex,
    /// Present when the support is pure and every maximal cell has a computable multiplicity.
    pub weighted: Option<WeightedComplex>,
    pub degree_bound: usize,
    pub label: &'static str,
    pub notes: Vec<String>,
}

/// The prevariety of the chart circuits of degree ≤ `bound`, with cell multiplicities.
pub fn variety(ideal: &IdealTruncation, bound: usize) -> Result<Variety> {
    if bound > ideal.degree_bound() {
        return Err(Error::DegreeBound(format!("degree {bound} exceeds the truncation bound {}", ideal.degree_bound())));
    }
    let n = ideal.chart_dim();
    let mut seen = std::collections::BTreeSet::new();
    let mut fs = Vec::new();
    for d in 0..=bound {
        for f in ideal.chart_circuits(d)? {
            if seen.insert(hypersurface_key(&f)) {
                fs.push(f);
            }
        }
    }
    fs.sort_by_key(|f| f.len());
    let support = if fs.is_empty() {
        PolyComplex::from_cells(n, [Polyhedron::whole(n)])
    } else {
        prevariety(&fs)?
    };
    let mut notes = Vec::new();
    let weighted = if support.is_empty() {
        Some(WeightedComplex::new(n, 0, vec![])?)
    } else if !support.is_pure() {
        notes.push("support is not pure; no weights assigned".into());
        None
    } else {
        let dim = support.dim() as usize;
        let mut cells = Vec::new();
        let mut failed = None;
        for c in support.maximal_cells() {
            match cell_multiplicity(ideal, c) {
                Ok(0) => {}
                Ok(m) => cells.push((c.clone(), m)),
                Err(e @ (Error::Unsupported(_) | Error::DegreeBound(_) | Error::NotStabilized(_))) => {
                    failed = Some(e.to_string());
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        match failed {
            Some(e) => {
                notes.push(format!("multiplicities unavailable: {e}"));
                None
            }
            None => Some(WeightedComplex::new(n, dim, cells)?),
        }
    };
    Ok(Variety { support, weighted, degree_bound: bound, label: VARIETY_LABEL, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{hypersurface, weighted_equal};
    use crate::field::ValuedField;
    use crate::parse::{parse_classical, parse_trop};
    use crate::poly::Ambient;

    fn affine(vars: &[&str], field: &str, gens: &[&str], d: usize) -> IdealTruncation {
        let n: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let field = ValuedField::parse(field).unwrap();
        let par = if field.has_parameter() { Some("t") } else { None };
        let g: Vec<_> = gens.iter().map(|s| parse_classical(s, &n, par).unwrap()).collect();
        IdealTruncation::tropicalize(&n, Ambient::Affine(vars.len()), field, &g, d).unwrap()
    }

    #[test]
    fn line_cells_have_multiplicity_one() {
        let i = affine(&["x", "y"], "trivial", &["x + y + 1"], 2);
        let v = variety(&i, 1).unwrap();
        let w = v.weighted.unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let h = hypersurface(&parse_trop("min(x, y, 0)", &names, Ambient::Affine(2)).unwrap()).unwrap();
        assert!(weighted_equal(&w, &h));
    }

    #[test]
    fn rays_of_a_doubled_line_have_multiplicity_two() {
        let i = affine(&["x", "y"], "trivial", &["x^2 + y^2 + 1"], 2);
        let v = variety(&i, 2).unwrap();
        let w = v.weighted.unwrap();
        assert_eq!(w.cells().iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![2, 2, 2]);
        assert!(w.is_balanced().unwrap());
    }

    #[test]
    fn univariate_points() {
        let i = affine(&["x"], "t-adic", &["(x - 1)*(x - t)"], 3);
        let v = variety(&i, 2).unwrap();
        let w = v.weighted.unwrap();
        assert_eq!(w.total_weight(), 2);
        assert_eq!(w.cells().len(), 2);
    }
}
