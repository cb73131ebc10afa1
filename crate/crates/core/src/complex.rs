//! Rational polyhedral complexes: normal complexes, hypersurfaces, prevarieties, Gröbner
//! complexes, stars, recession fans, balancing and stable intersection with a coordinate hyperplane.

use crate::error::{Error, Result};
use crate::ideal::IdealTruncation;
use crate::lattice::{primitive, quotient_generator};
use crate::linalg::rank;
use crate::lp::Constraint;
use crate::poly::{Ambient, ExpVec, TropPoly};
use crate::polyhedron::Polyhedron;
use crate::scalar::{q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// A complex closed under taking faces; cells sorted by decreasing dimension, then canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyComplex {
    n: usize,
    cells: Vec<Polyhedron>,
    maximal: Vec<usize>,
}

impl PolyComplex {
    pub fn empty(n: usize) -> Self {
        PolyComplex { n, cells: vec![], maximal: vec![] }
    }

    /// The complex generated by the given polyhedra and all their faces.
    pub fn from_cells(n: usize, cells: impl IntoIterator<Item = Polyhedron>) -> Self {
        let given: BTreeSet<Polyhedron> = cells.into_iter().collect();
        let mut all: BTreeSet<Polyhedron> = BTreeSet::new();
        for c in &given {
            if !all.contains(c) {
                all.extend(c.faces());
            }
        }
        let mut cells: Vec<Polyhedron> = all.into_iter().collect();
        cells.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.cmp(b)));
        let maximal = (0..cells.len())
            .filter(|&i| !cells[..i].iter().any(|c| c.dim() > cells[i].dim() && cells[i].is_subset_of(c)))
            .collect();
        PolyComplex { n, cells, maximal }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn maximal_cells(&self) -> Vec<&Polyhedron> {
        self.maximal.iter().map(|&i| &self.cells[i]).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// −1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.cells.first().map_or(-1, |c| c.dim() as i64)
    }

    pub fn is_pure(&self) -> bool {
        self.maximal.iter().all(|&i| self.cells[i].dim() as i64 == self.dim())
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<&Polyhedron> {
        self.cells.iter().filter(|c| c.dim() == d).collect()
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.maximal.iter().any(|&i| self.cells[i].contains(x))
    }

    /// Indices of the facets of each cell.
    pub fn facet_incidence(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|c| {
                c.facets()
                    .iter()
                    .filter_map(|f| self.cells.binary_search_by(|x| f.dim().cmp(&x.dim()).then(x.cmp(f))).ok())
                    .collect()
            })
            .collect()
    }

    /// Every pairwise intersection of maximal cells is a face of both.
    pub fn validate(&self) -> Result<()> {
        let m = self.maximal_cells();
        for (i, a) in m.iter().enumerate() {
            for b in &m[i + 1..] {
                if let Some(c) = a.intersect(b) {
                    if !c.is_face_of(a) || !c.is_face_of(b) {
                        return Err(Error::Invalid("two cells meet outside a common face".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The intersection of supports, subdivided by both complexes.
    pub fn refine(&self, o: &PolyComplex) -> PolyComplex {
        let mut out = Vec::new();
        for a in self.maximal_cells() {
            for b in o.maximal_cells() {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        PolyComplex::from_cells(self.n, out)
    }

    /// Tangent cones at w of the cells containing w.
    pub fn star(&self, w: &[Q]) -> PolyComplex {
        PolyComplex::from_cells(self.n, self.cells.iter().filter(|c| c.contains(w)).map(|c| c.tangent_cone(w)))
    }

    /// Recession cones of all cells, which must form a fan.
    pub fn recession_fan(&self) -> Result<PolyComplex> {
        let cones: BTreeSet<Polyhedron> = self.cells.iter().map(|c| c.recession_cone()).collect();
        let v: Vec<&Polyhedron> = cones.iter().collect();
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                let c = a.intersect(b).expect("cones share the origin");
                if !c.is_face_of(a) || !c.is_face_of(b) {
                    return Err(Error::Invalid("recession cones do not form a fan".into()));
                }
            }
        }
        Ok(PolyComplex::from_cells(self.n, cones))
    }

    pub fn affine_image(&self, a: &[Vec<Q>], t: &[Q]) -> Result<PolyComplex> {
        let cells: Option<Vec<Polyhedron>> = self.maximal_cells().iter().map(|c| c.affine_image(a, t)).collect();
        Ok(PolyComplex::from_cells(self.n, cells.ok_or_else(|| Error::Invalid("singular linear map".into()))?))
    }
}

/// Pieces {σ ∩ τ} of the same dimension as σ cover σ.
fn covers(sigma: &Polyhedron, pieces: &[Polyhedron]) -> bool {
    if pieces.iter().any(|p| p == sigma) {
        return true;
    }
    if pieces.is_empty() {
        return false;
    }
    let boundary = sigma.facets();
    for p in pieces {
        for f in p.facets() {
            if boundary.iter().any(|b| f.is_subset_of(b)) {
                continue;
            }
            let across: Vec<Polyhedron> = pieces
                .iter()
                .filter(|q| *q != p)
                .filter_map(|q| q.intersect(&f))
                .filter(|x| x.dim() == f.dim())
                .collect();
            if !covers(&f, &across) {
                return false;
            }
        }
    }
    true
}

fn pieces_in(sigma: &Polyhedron, cells: &[&Polyhedron]) -> Vec<Polyhedron> {
    cells.iter().filter_map(|c| c.intersect(sigma)).filter(|x| x.dim() == sigma.dim()).collect()
}

/// Whether two complexes have the same support.
pub fn same_support(a: &PolyComplex, b: &PolyComplex) -> bool {
    let half = |x: &PolyComplex, y: &PolyComplex| {
        let ym = y.maximal_cells();
        x.maximal_cells().iter().all(|s| covers(s, &pieces_in(s, &ym)))
    };
    a.ambient_dim() == b.ambient_dim() && half(a, b) && half(b, a)
}

/// A pure complex with positive integer weights on its maximal cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedComplex {
    n: usize,
    dim: usize,
    cells: Vec<(Polyhedron, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceWitness {
    /// The codimension-one cell where balancing fails.
    pub cell: Polyhedron,
    /// The weighted sum of primitive generators, which is not in the span of the cell.
    pub sum: Vec<BigInt>,
}

impl WeightedComplex {
    pub fn new(n: usize, dim: usize, cells: Vec<(Polyhedron, u64)>) -> Result<Self> {
        for (c, m) in &cells {
            if c.ambient_dim() != n {
                return Err(Error::LengthMismatch { expected: n, got: c.ambient_dim() });
            }
            if c.dim() != dim {
                return Err(Error::Invalid(format!("cell of dimension {} in a pure complex of dimension {dim}", c.dim())));
            }
            if *m == 0 {
                return Err(Error::Invalid("weights must be positive".into()));
            }
        }
        let mut cells = cells;
        cells.sort();
        cells.dedup_by(|a, b| a.0 == b.0);
        Ok(WeightedComplex { n, dim, cells })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[(Polyhedron, u64)] {
        &self.cells
    }

    pub fn weight_of(&self, c: &Polyhedron) -> Option<u64> {
        self.cells.iter().find(|(x, _)| x == c).map(|(_, m)| *m)
    }

    pub fn total_weight(&self) -> u64 {
        self.cells.iter().map(|(_, m)| m).sum()
    }

    pub fn complex(&self) -> PolyComplex {
        PolyComplex::from_cells(self.n, self.cells.iter().map(|(c, _)| c.clone()))
    }

    pub fn with_weights(&self, weights: &[u64]) -> Result<WeightedComplex> {
        if weights.len() != self.cells.len() {
            return Err(Error::LengthMismatch { expected: self.cells.len(), got: weights.len() });
        }
        let cells = self.cells.iter().zip(weights).map(|((c, _), &m)| (c.clone(), m)).collect();
        WeightedComplex::new(self.n, self.dim, cells)
    }

    /// Tangent cones at w of the maximal cells containing w, with their weights.
    pub fn star(&self, w: &[Q]) -> WeightedComplex {
        let cells = self.cells.iter().filter(|(c, _)| c.contains(w)).map(|(c, m)| (c.tangent_cone(w), *m)).collect();
        WeightedComplex::new(self.n, self.dim, cells).expect("tangent cones keep dimension")
    }

    /// The balancing condition at every codimension-one cell.
    pub fn check_balanced(&self) -> Result<Option<BalanceWitness>> {
        if self.dim == 0 {
            return Ok(None);
        }
        let ridges: BTreeSet<Polyhedron> =
            self.cells.iter().flat_map(|(c, _)| c.facets()).filter(|f| f.dim() + 1 == self.dim).collect();
        for tau in ridges {
            let span_t = tau.direction_space();
            let mut sum = vec![BigInt::zero(); self.n];
            for (sigma, m) in &self.cells {
                if !tau.is_face_of(sigma) {
                    continue;
                }
                let v: Vec<Q> = sigma.relint_point().iter().zip(tau.relint_point()).map(|(a, b)| a - b).collect();
                let u = quotient_generator(&sigma.direction_space(), &span_t, &v)?;
                for (s, x) in sum.iter_mut().zip(&u) {
                    *s += x * BigInt::from(*m);
                }
            }
            let mut rows = span_t.clone();
            rows.push(sum.iter().map(|x| Q::from_integer(x.clone())).collect());
            if rank(&rows) > span_t.len() {
                return Ok(Some(BalanceWitness { cell: tau, sum }));
            }
        }
        Ok(None)
    }

    pub fn is_balanced(&self) -> Result<bool> {
        Ok(self.check_balanced()?.is_none())
    }

    /// W ∩_st {x_i = a}, projected to ℝ^{n−1} by dropping coordinate i.
    pub fn stable_intersect_hyperplane(&self, i: usize, a: &Q) -> Result<WeightedComplex> {
        if i >= self.n {
            return Err(Error::Invalid(format!("coordinate {i} out of range")));
        }
        if self.dim == 0 {
            return Err(Error::Invalid("stable intersection of a zero-dimensional complex is empty".into()));
        }
        if let Some(w) = self.check_balanced()? {
            return Err(Error::Unbalanced(format!("at the cell through {:?}", w.cell.relint_point())));
        }
        let mut e = vec![Q::zero(); self.n];
        e[i] = q(1);
        let le: Constraint = (e.clone(), a.clone());
        let ge: Constraint = (e.iter().map(|x| -x).collect(), -a);
        let mut pieces: Vec<(Polyhedron, u64)> = Vec::new();
        for (c, m) in &self.cells {
            for h in [&le, &ge] {
                if let Some(p) = c.with(std::slice::from_ref(h), &[]) {
                    if p.dim() == self.dim && !pieces.iter().any(|(x, _)| *x == p) {
                        pieces.push((p, *m));
                    }
                }
            }
        }
        let hyper = Polyhedron::new(self.n, vec![], vec![le.clone()]).expect("hyperplane");
        let ridges: BTreeSet<Polyhedron> = pieces
            .iter()
            .flat_map(|(p, _)| p.facets())
            .filter(|f| f.dim() + 1 == self.dim && f.is_subset_of(&hyper))
            .collect();
        let mut out = Vec::new();
        for rho in ridges {
            let span_r = rho.direction_space();
            let (mut plus, mut minus) = (BigInt::zero(), BigInt::zero());
            for (p, m) in &pieces {
                let side = &p.relint_point()[i] - a;
                if side.is_zero() || !rho.is_face_of(p) {
                    continue;
                }
                let v: Vec<Q> = p.relint_point().iter().zip(rho.relint_point()).map(|(x, y)| x - y).collect();
                let u = quotient_generator(&p.direction_space(), &span_r, &v)?;
                let c = &u[i] * BigInt::from(*m);
                if side.is_positive() {
                    plus += c;
                } else {
                    minus -= c;
                }
            }
            debug_assert_eq!(plus, minus, "balancing forces both sides to agree");
            if !plus.is_zero() {
                let w = plus.to_u64().ok_or_else(|| Error::Invalid("weight overflow".into()))?;
                out.push((rho.slice_coordinate(i, a).expect("cell lies in the hyperplane"), w));
            }
        }
        WeightedComplex::new(self.n - 1, self.dim - 1, out)
    }
}

/// Equality of supports and weights, up to common refinement.
pub fn weighted_equal(a: &WeightedComplex, b: &WeightedComplex) -> bool {
    if a.n != b.n || a.dim != b.dim && !(a.cells.is_empty() && b.cells.is_empty()) {
        return false;
    }
    let half = |x: &WeightedComplex, y: &WeightedComplex| {
        x.cells.iter().all(|(s, m)| {
            let pieces: Vec<(Polyhedron, u64)> = y
                .cells
                .iter()
                .filter_map(|(c, k)| c.intersect(s).map(|p| (p, *k)))
                .filter(|(p, _)| p.dim() == s.dim())
                .collect();
            pieces.iter().all(|(_, k)| k == m) && covers(s, &pieces.into_iter().map(|(p, _)| p).collect::<Vec<_>>())
        })
    };
    half(a, b) && half(b, a)
}

/// Closures of the loci of constant initial form, in the ambient space of f.
pub fn normal_complex(f: &TropPoly) -> Result<PolyComplex> {
    if f.is_infinity() {
        return Err(Error::InfinityPolynomial);
    }
    let n = f.nvars();
    let terms: Vec<(&ExpVec, &Q)> = f.terms().iter().collect();
    let mut regions = Vec::new();
    for (k, (u, c)) in terms.iter().enumerate() {
        let ineqs: Vec<Constraint> = terms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, (v, d))| (u.0.iter().zip(&v.0).map(|(a, b)| q(a - b)).collect(), *d - *c))
            .collect();
        if let Some(r) = Polyhedron::new(n, ineqs, vec![]) {
            if r.dim() == n {
                regions.push(r);
            }
        }
    }
    Ok(PolyComplex::from_cells(n, regions))
}

/// Lattice length of the segment spanned by collinear exponent vectors.
fn lattice_length(points: &[&ExpVec]) -> u64 {
    let mut best = BigInt::zero();
    for (i, u) in points.iter().enumerate() {
        for v in &points[i + 1..] {
            let g = u.0.iter().zip(&v.0).fold(BigInt::zero(), |g, (a, b)| g.gcd(&BigInt::from(a - b)));
            if g > best {
                best = g;
            }
        }
    }
    best.to_u64().unwrap_or(0)
}

/// V(f) with lattice-length weights; the codimension-one skeleton of N(f).
pub fn hypersurface(f: &TropPoly) -> Result<WeightedComplex> {
    if f.len() < 2 {
        return Err(Error::Invalid("a monomial has an empty hypersurface in the torus".into()));
    }
    let n = f.nvars();
    let nc = normal_complex(f)?;
    let mut cells = Vec::new();
    for c in nc.cells_of_dim(n - 1) {
        let w = c.relint_point();
        let val = f.eval(w)?;
        let min = val.finite().expect("finite polynomial").clone();
        let tied: Vec<&ExpVec> = f.terms().iter().filter(|(u, k)| *k + u.dot(w) == min).map(|(u, _)| u).collect();
        cells.push((c.clone(), lattice_length(&tied)));
    }
    WeightedComplex::new(n, n - 1, cells)
}

/// ⋂ V(f) for the given polynomials, subdivided by each hypersurface.
pub fn prevariety(fs: &[TropPoly]) -> Result<PolyComplex> {
    let Some(first) = fs.first() else { return Err(Error::Invalid("prevariety of an empty list".into())) };
    let n = first.nvars();
    let mut acc: Option<PolyComplex> = None;
    for f in fs {
        if f.nvars() != n {
            return Err(Error::LengthMismatch { expected: n, got: f.nvars() });
        }
        let h = if f.len() < 2 { PolyComplex::empty(n) } else { hypersurface(f)?.complex() };
        acc = Some(match acc {
            None => h,
            Some(a) => a.refine(&h),
        });
        if acc.as_ref().is_some_and(|a| a.is_empty()) {
            break;
        }
    }
    Ok(acc.unwrap())
}

/// F_d = ⊕_B p(B) ⊙ x^{Σ_{e ∉ B} u_e}, dehomogenized to the chart.
pub fn basis_polynomial(ideal: &IdealTruncation, d: usize) -> Result<TropPoly> {
    let m = ideal.part(d)?;
    let n = ideal.nvars();
    let mut terms = Vec::new();
    for (b, p) in m.bases() {
        let mut e = vec![0i64; n];
        for (i, u) in m.ground().iter().enumerate() {
            if b >> i & 1 == 0 {
                for (x, y) in e.iter_mut().zip(&u.0) {
                    *x += y;
                }
            }
        }
        terms.push((ExpVec(e), p.clone()));
    }
    TropPoly::from_terms(Ambient::Projective(n), terms)?.dehomogenize()
}

/// The Gröbner complex in the chart w_0 = 0 through degree `bound`: the common refinement of the
/// normal complexes N(F_d), d ≤ bound.
pub fn groebner_complex(ideal: &IdealTruncation, bound: usize) -> Result<PolyComplex> {
    if bound > ideal.degree_bound() {
        return Err(Error::DegreeBound(format!("degree {bound} exceeds the truncation bound {}", ideal.degree_bound())));
    }
    let mut acc = PolyComplex::from_cells(ideal.chart_dim(), [Polyhedron::whole(ideal.chart_dim())]);
    for d in 0..=bound {
        let f = basis_polynomial(ideal, d)?;
        if f.len() > 1 {
            acc = acc.refine(&normal_complex(&f)?);
        }
    }
    Ok(acc)
}

/// Primitive integer direction of a rational vector, as i64 entries.
pub fn primitive_i64(v: &[Q]) -> Result<Vec<i64>> {
    primitive(v)?.iter().map(|x| x.to_i64().ok_or_else(|| Error::Invalid("entry overflows i64".into()))).collect()
}
