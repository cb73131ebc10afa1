//! Valuated matroids on finite monomial ground sets.
//!
//! Vector convention: the vectors of `Mat(I|_E)` are the elements of I supported on E, a set
//! B ⊆ E is a basis when no vector is supported inside it, and for a realizable matroid
//! p(B) is the valuation of the maximal minor of a row basis on the columns E∖B.

use crate::config::{check_guard, Guards};
use crate::error::{EliminationFailure, Error, Result};
use crate::field::{FieldElem, ValuedField};
use crate::linalg::{det, rref, Matrix};
use crate::poly::{Ambient, ExpVec, TropPoly};
use crate::scalar::{TropScalar, Q};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

pub type Mask = u64;

pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

pub(crate) fn popcount(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Coefficients indexed by ground-set position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropVector(pub Vec<TropScalar>);

impl TropVector {
    pub fn infinity(n: usize) -> Self {
        TropVector(vec![TropScalar::Inf; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Mask {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_inf()).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn is_infinity(&self) -> bool {
        self.0.iter().all(|c| c.is_inf())
    }

    pub fn min_coeff(&self) -> Option<Q> {
        self.0.iter().filter_map(|c| c.finite()).min().cloned()
    }

    pub fn shift(&self, s: &Q) -> TropVector {
        TropVector(self.0.iter().map(|c| c.odot(&TropScalar::Fin(s.clone()))).collect())
    }

    /// Minimal finite coefficient scaled to 0.
    pub fn normalized(&self) -> TropVector {
        match self.min_coeff() {
            None => self.clone(),
            Some(m) => self.shift(&-m),
        }
    }

    pub fn oplus(&self, o: &TropVector) -> TropVector {
        TropVector(self.0.iter().zip(&o.0).map(|(a, b)| a.oplus(b)).collect())
    }

    pub fn trivialize(&self) -> TropVector {
        TropVector(self.0.iter().map(|c| c.trivialize()).collect())
    }

    pub fn from_poly(f: &TropPoly, ground: &[ExpVec]) -> Result<TropVector> {
        let mut v = TropVector::infinity(ground.len());
        for (u, c) in f.terms() {
            match ground.iter().position(|g| g == u) {
                Some(i) => v.0[i] = TropScalar::Fin(c.clone()),
                None => return Err(Error::Invalid(format!("monomial {:?} is not in the ground set", u.0))),
            }
        }
        Ok(v)
    }

    pub fn to_poly(&self, ground: &[ExpVec], ambient: Ambient) -> TropPoly {
        let terms = ground.iter().zip(&self.0).filter_map(|(u, c)| c.finite().map(|c| (u.clone(), c.clone())));
        TropPoly::from_terms(ambient, terms.collect::<Vec<_>>()).expect("ground set fits the ambient")
    }
}

/// Whether h eliminates u from f and g in the sense of (⋆).
pub fn satisfies_star(f: &TropVector, g: &TropVector, h: &TropVector, u: usize) -> bool {
    if !h.0[u].is_inf() {
        return false;
    }
    (0..f.len()).filter(|&v| v != u).all(|v| {
        let m = f.0[v].oplus(&g.0[v]);
        if f.0[v] != g.0[v] {
            h.0[v] == m
        } else {
            h.0[v] >= m
        }
    })
}

/// Smallest tropical combination of `gens` that is ∞ at u and ≥ min(f, g) elsewhere.
/// Some element of the tropical span satisfies (⋆) iff this one does.
pub fn canonical_elimination(gens: &[TropVector], f: &TropVector, g: &TropVector, u: usize) -> TropVector {
    let m = f.oplus(g);
    let fin = m.support() & !(1 << u);
    let mut h = TropVector::infinity(f.len());
    for c in gens {
        let s = c.support();
        if s == 0 || s & !fin != 0 {
            continue;
        }
        let lambda = bits(s)
            .map(|v| m.0[v].finite().unwrap() - c.0[v].finite().unwrap())
            .max()
            .unwrap();
        h = h.oplus(&c.shift(&lambda));
    }
    h
}

/// Classical route: h = trop(f̂ − (f̂_u/ĝ_u) ĝ) for lifts with f̂_u, ĝ_u ≠ 0.
pub fn eliminate_classical(fh: &[FieldElem], gh: &[FieldElem], u: usize, field: &ValuedField) -> Result<TropVector> {
    if fh[u].is_zero() || gh[u].is_zero() {
        return Err(Error::Invalid("the eliminated coefficient must be nonzero in both lifts".into()));
    }
    let c = fh[u].div(&gh[u])?;
    Ok(TropVector(fh.iter().zip(gh).map(|(a, b)| field.val(&a.sub(&b.mul(&c)))).collect()))
}

pub fn classical_vector(v: &[FieldElem], field: &ValuedField) -> TropVector {
    TropVector(v.iter().map(|c| field.val(c)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExchangeWitness {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationWitness {
    pub f: TropVector,
    pub g: TropVector,
    pub u: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VMatroid {
    ground: Vec<ExpVec>,
    rank: usize,
    /// Finite basis values, minimum 0.
    p: BTreeMap<Mask, Q>,
}

impl VMatroid {
    pub fn new(ground: Vec<ExpVec>, rank: usize, p: BTreeMap<Mask, Q>) -> Result<Self> {
        check_guard("ground_bits", 64, ground.len())?;
        if p.is_empty() {
            return Err(Error::NotMatroid("no basis has a finite value".into()));
        }
        if let Some(b) = p.keys().find(|b| popcount(**b) != rank || **b >> ground.len() != 0) {
            return Err(Error::NotMatroid(format!("basis {:?} has the wrong size", bits(*b).collect::<Vec<_>>())));
        }
        let m = p.values().min().unwrap().clone();
        let p = p.into_iter().map(|(b, v)| (b, v - &m)).collect();
        Ok(VMatroid { ground, rank, p })
    }

    /// The matroid with no vectors (every element is a coloop).
    pub fn free(ground: Vec<ExpVec>) -> Self {
        let n = ground.len();
        let full = if n == 64 { Mask::MAX } else { (1 << n) - 1 };
        VMatroid { ground, rank: n, p: [(full, Q::zero())].into_iter().collect() }
    }

    /// The matroid in which every element is a loop (every monomial is a vector).
    pub fn all_loops(ground: Vec<ExpVec>) -> Self {
        VMatroid { ground, rank: 0, p: [(0, Q::zero())].into_iter().collect() }
    }

    pub fn ground(&self) -> &[ExpVec] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> impl Iterator<Item = (&Mask, &Q)> {
        self.p.iter()
    }

    pub fn num_bases(&self) -> usize {
        self.p.len()
    }

    pub fn value(&self, b: Mask) -> TropScalar {
        match self.p.get(&b) {
            Some(v) => TropScalar::Fin(v.clone()),
            None => TropScalar::Inf,
        }
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.p.values().all(|v| v.is_zero())
    }

    pub fn index_of(&self, u: &ExpVec) -> Option<usize> {
        self.ground.iter().position(|g| g == u)
    }

    pub fn full_mask(&self) -> Mask {
        if self.len() == 64 {
            Mask::MAX
        } else {
            (1 << self.len()) - 1
        }
    }

    /// Rows are reduced internally; columns are indexed by `ground`.
    pub fn from_rowspace(rows: &Matrix<FieldElem>, ground: Vec<ExpVec>, field: &ValuedField) -> Result<Self> {
        let n = ground.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: r.len() });
        }
        check_guard("ground_bits", 64, n)?;
        let mut a = rows.clone();
        rref(&mut a);
        let k = a.len();
        if k == 0 {
            return Ok(VMatroid::free(ground));
        }
        let count = binomial(n, k);
        check_guard("minors", Guards::global().minors, count)?;
        let mut p = BTreeMap::new();
        let full: Mask = if n == 64 { Mask::MAX } else { (1 << n) - 1 };
        let mut cols: Vec<usize> = (0..k).collect();
        loop {
            let sub: Matrix<FieldElem> = a.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
            let d = det(&sub);
            if !d.is_zero() {
                let jm: Mask = cols.iter().fold(0, |m, &c| m | 1 << c);
                p.insert(full & !jm, field.val(&d).finite().cloned().unwrap());
            }
            if !next_combination(&mut cols, n) {
                break;
            }
        }
        VMatroid::new(ground, n - k, p)
    }

    /// C(e, B)_x = p((B ∪ e) ∖ x), normalized.
    pub fn fundamental_circuit(&self, b: Mask, e: usize) -> Result<TropVector> {
        if !self.p.contains_key(&b) {
            return Err(Error::Invalid("not a basis with finite value".into()));
        }
        if b >> e & 1 == 1 {
            return Err(Error::Invalid(format!("element {e} lies in the basis")));
        }
        let be = b | 1 << e;
        let mut v = TropVector::infinity(self.len());
        for x in bits(be) {
            v.0[x] = self.value(be & !(1 << x));
        }
        Ok(v.normalized())
    }

    /// All circuits, normalized, sorted by support then coefficients.
    pub fn circuits(&self) -> Result<Vec<TropVector>> {
        check_guard("circuit_ground", Guards::global().circuit_ground, self.len())?;
        let mut by_support: BTreeMap<Mask, TropVector> = BTreeMap::new();
        let full = self.full_mask();
        for b in self.p.keys() {
            for e in bits(full & !b) {
                let c = self.fundamental_circuit(*b, e)?;
                by_support.entry(c.support()).or_insert(c);
            }
        }
        Ok(by_support.into_values().collect())
    }

    /// Rebuilds the basis valuation from a complete list of circuits.
    pub fn from_circuits(ground: Vec<ExpVec>, circuits: &[TropVector]) -> Result<Self> {
        let n = ground.len();
        check_guard("ground_bits", 64, n)?;
        let circuits: Vec<TropVector> = circuits.iter().filter(|c| !c.is_infinity()).map(|c| c.normalized()).collect();
        if let Some(c) = circuits.iter().find(|c| c.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: c.len() });
        }
        let masks: Vec<Mask> = circuits.iter().map(|c| c.support()).collect();
        let dependent = |s: Mask| masks.iter().any(|&c| c & !s == 0);
        let mut b0: Mask = 0;
        for e in 0..n {
            if !dependent(b0 | 1 << e) {
                b0 |= 1 << e;
            }
        }
        let rank = popcount(b0);
        let full: Mask = if n == 64 { Mask::MAX } else { (1 << n) - 1 };
        let mut by_elem: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ci, &m) in masks.iter().enumerate() {
            for e in bits(m) {
                by_elem[e].push(ci);
            }
        }
        let mut p: HashMap<Mask, Q> = HashMap::new();
        p.insert(b0, Q::zero());
        let mut queue = VecDeque::from([b0]);
        let limit = Guards::global().minors;
        while let Some(b) = queue.pop_front() {
            let pb = p[&b].clone();
            for e in bits(full & !b) {
                let be = b | 1 << e;
                let found: Vec<usize> = by_elem[e].iter().copied().filter(|&ci| masks[ci] & !be == 0).collect();
                let ci = match found.as_slice() {
                    [ci] => *ci,
                    [] => return Err(Error::NotMatroid(format!("no circuit inside a basis plus element {e}"))),
                    _ => {
                        return Err(Error::NotMatroid(format!(
                            "two circuits inside a basis plus element {e} (circuit set is not a matroid's)"
                        )))
                    }
                };
                let c = &circuits[ci];
                let ce = c.0[e].finite().unwrap();
                for x in bits(masks[ci]).filter(|&x| x != e) {
                    let nb = be & !(1 << x);
                    let val = &pb + c.0[x].finite().unwrap() - ce;
                    match p.get(&nb) {
                        Some(old) if *old != val => {
                            return Err(Error::NotMatroid(
                                "basis values inferred from the circuits are inconsistent".into(),
                            ))
                        }
                        Some(_) => {}
                        None => {
                            check_guard("minors", limit, p.len() + 1)?;
                            p.insert(nb, val);
                            queue.push_back(nb);
                        }
                    }
                }
            }
        }
        let m = VMatroid::new(ground, rank, p.into_iter().collect())?;
        let got = m.circuits_unguarded();
        if got != {
            let mut s: Vec<TropVector> = circuits.clone();
            s.sort_by_key(|c| c.support());
            s.dedup();
            s
        } {
            return Err(Error::NotMatroid("the given vectors are not exactly the circuits of a valuated matroid".into()));
        }
        Ok(m)
    }

    fn circuits_unguarded(&self) -> Vec<TropVector> {
        let mut by_support: BTreeMap<Mask, TropVector> = BTreeMap::new();
        let full = self.full_mask();
        for b in self.p.keys() {
            for e in bits(full & !b) {
                let c = self.fundamental_circuit(*b, e).expect("basis");
                by_support.entry(c.support()).or_insert(c);
            }
        }
        by_support.into_values().collect()
    }

    /// Trivially valued matroid with bases argmin_B (p(B) − Σ_{e∈B} w(e)).
    pub fn initial_matroid(&self, w: &[Q]) -> Result<VMatroid> {
        if w.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: w.len() });
        }
        let vals: Vec<(Mask, Q)> = self
            .p
            .iter()
            .map(|(b, v)| {
                let s: Q = bits(*b).map(|e| &w[e]).sum();
                (*b, v - s)
            })
            .collect();
        let m = vals.iter().map(|(_, v)| v).min().unwrap().clone();
        let p = vals.into_iter().filter(|(_, v)| *v == m).map(|(b, _)| (b, Q::zero())).collect();
        VMatroid::new(self.ground.clone(), self.rank, p)
    }

    /// The initial matroid with weights w(e) = w·u_e on the monomial ground set.
    pub fn initial_matroid_at(&self, w: &[Q]) -> Result<VMatroid> {
        let we: Vec<Q> = self.ground.iter().map(|u| u.dot(w)).collect();
        self.initial_matroid(&we)
    }

    pub fn trivialize(&self) -> VMatroid {
        VMatroid { ground: self.ground.clone(), rank: self.rank, p: self.p.keys().map(|b| (*b, Q::zero())).collect() }
    }

    /// Vectors supported on `keep`, as a matroid on that sub-ground (ground order preserved).
    /// Deletes one element at a time from the basis valuation: a non-coloop keeps the bases
    /// avoiding it, a coloop is removed from every basis.
    pub fn restrict(&self, keep: Mask) -> Result<VMatroid> {
        let keep = keep & self.full_mask();
        let mut p: BTreeMap<Mask, Q> = self.p.clone();
        for e in bits(self.full_mask() & !keep) {
            let bit: Mask = 1 << e;
            if p.keys().any(|b| b & bit == 0) {
                p.retain(|b, _| b & bit == 0);
            } else {
                p = p.into_iter().map(|(b, v)| (b & !bit, v)).collect();
            }
        }
        let idx: Vec<usize> = bits(keep).collect();
        let compress = |b: Mask| idx.iter().enumerate().fold(0, |m, (j, &i)| if b >> i & 1 == 1 { m | 1 << j } else { m });
        let rank = popcount(*p.keys().next().unwrap());
        let p: BTreeMap<Mask, Q> = p.into_iter().map(|(b, v)| (compress(b), v)).collect();
        VMatroid::new(idx.iter().map(|&i| self.ground[i].clone()).collect(), rank, p)
    }

    /// The same restriction computed from the circuits contained in `keep`.
    pub fn restrict_by_circuits(&self, keep: Mask) -> Result<VMatroid> {
        let idx: Vec<usize> = bits(keep & self.full_mask()).collect();
        let sub_ground: Vec<ExpVec> = idx.iter().map(|&i| self.ground[i].clone()).collect();
        let circuits: Vec<TropVector> = self
            .circuits()?
            .into_iter()
            .filter(|c| c.support() & !keep == 0)
            .map(|c| TropVector(idx.iter().map(|&i| c.0[i].clone()).collect()))
            .collect();
        VMatroid::from_circuits(sub_ground, &circuits)
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: Mask) -> usize {
        self.p.keys().map(|b| popcount(b & s)).max().unwrap_or(0)
    }

    pub fn is_independent(&self, s: Mask) -> bool {
        self.p.keys().any(|b| s & !b == 0)
    }

    /// Replaces the ground labels, keeping positions.
    pub fn relabel(&self, ground: Vec<ExpVec>) -> Result<VMatroid> {
        if ground.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: ground.len() });
        }
        Ok(VMatroid { ground, rank: self.rank, p: self.p.clone() })
    }

    /// Multiplies every basis value by s > 0.
    pub fn scale_values(&self, s: &Q) -> VMatroid {
        VMatroid { ground: self.ground.clone(), rank: self.rank, p: self.p.iter().map(|(b, v)| (*b, v * s)).collect() }
    }

    /// Membership from the basis valuation alone: v is a vector iff for every (r−1)-set σ the
    /// minimum of v_x + p(σ ∪ x) over x ∉ σ is attained twice or is ∞.
    pub fn is_vector(&self, v: &TropVector) -> Result<bool> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: v.len() });
        }
        if v.is_infinity() {
            return Ok(true);
        }
        if self.rank == 0 {
            return Ok(true);
        }
        let full = self.full_mask();
        let mut sigmas: BTreeSet<Mask> = BTreeSet::new();
        for b in self.p.keys() {
            for x in bits(*b) {
                sigmas.insert(b & !(1 << x));
            }
        }
        for s in sigmas {
            let mut best: Option<Q> = None;
            let mut count = 0;
            for x in bits(full & !s) {
                let (TropScalar::Fin(a), TropScalar::Fin(b)) = (&v.0[x], self.value(s | 1 << x)) else { continue };
                let t = a + b;
                match &best {
                    Some(m) if t > *m => {}
                    Some(m) if t == *m => count += 1,
                    _ => {
                        best = Some(t);
                        count = 1;
                    }
                }
            }
            if count == 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether v lies in the tropical span of the circuits.
    pub fn contains_vector(&self, v: &TropVector) -> Result<bool> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: v.len() });
        }
        if v.is_infinity() {
            return Ok(true);
        }
        let s = v.support();
        let mut h = TropVector::infinity(self.len());
        for c in self.circuits()? {
            let cs = c.support();
            if cs & !s != 0 {
                continue;
            }
            let lambda =
                bits(cs).map(|x| v.0[x].finite().unwrap() - c.0[x].finite().unwrap()).max().unwrap();
            h = h.oplus(&c.shift(&lambda));
        }
        Ok(h == *v)
    }

    /// A vector h of the matroid satisfying (⋆) for f, g at u; exact via the canonical combination.
    pub fn eliminate(&self, f: &TropVector, g: &TropVector, u: usize) -> Result<TropVector> {
        if f.0[u].is_inf() || f.0[u] != g.0[u] {
            return Err(Error::Invalid("f and g must share a finite coefficient at the eliminated monomial".into()));
        }
        let circuits = self.circuits().map_err(|e| Error::Elimination {
            kind: EliminationFailure::SearchBound,
            msg: e.to_string(),
        })?;
        let h = canonical_elimination(&circuits, f, g, u);
        if satisfies_star(f, g, &h, u) {
            Ok(h)
        } else {
            Err(Error::Elimination {
                kind: EliminationFailure::NotTropical,
                msg: "no vector of the matroid eliminates the monomial (inputs are not both vectors)".into(),
            })
        }
    }

    /// Exchange axiom: p(B₁)+p(B₂) ≥ min_j p(B₁−i+j)+p(B₂−j+i); returns a violating triple.
    pub fn check_exchange_axiom(&self) -> Result<Option<ExchangeWitness>> {
        let guards = Guards::global();
        check_guard("axiom_ground", guards.axiom_ground, self.len())?;
        check_guard("exchange_pairs", guards.exchange_pairs, self.p.len() * self.p.len())?;
        for (b1, v1) in &self.p {
            for (b2, v2) in &self.p {
                if b1 == b2 {
                    continue;
                }
                let lhs = TropScalar::Fin(v1 + v2);
                for i in bits(b1 & !b2) {
                    let ok = bits(b2 & !b1).any(|j| {
                        let r = self.value((b1 & !(1 << i)) | 1 << j).odot(&self.value((b2 & !(1 << j)) | 1 << i));
                        lhs >= r
                    });
                    if !ok {
                        return Ok(Some(ExchangeWitness {
                            b1: bits(*b1).collect(),
                            b2: bits(*b2).collect(),
                            i,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn circuits_as_polys(&self, ambient: Ambient) -> Result<Vec<TropPoly>> {
        Ok(self.circuits()?.iter().map(|c| c.to_poly(&self.ground, ambient)).collect())
    }
}

/// For every pair of the set and every shared finite coefficient, (⋆) is met inside the tropical span.
pub fn check_monomial_elimination(vectors: &[TropVector]) -> Result<Option<EliminationWitness>> {
    let Some(n) = vectors.first().map(|v| v.len()) else { return Ok(None) };
    check_guard("axiom_ground", Guards::global().axiom_ground.max(Guards::global().circuit_ground), n)?;
    for f in vectors {
        for g in vectors {
            for u in 0..n {
                let (Some(a), Some(b)) = (f.0[u].finite(), g.0[u].finite()) else { continue };
                let g2 = g.shift(&(a - b));
                let h = canonical_elimination(vectors, f, &g2, u);
                if !satisfies_star(f, &g2, &h, u) {
                    return Ok(Some(EliminationWitness { f: f.clone(), g: g2, u }));
                }
            }
        }
    }
    Ok(None)
}

/// Support-minimal vectors of the elimination closure of `vectors`, where each elimination adds
/// min(f, g) with the eliminated coefficient removed. Not canonical: callers flag the result.
pub fn elimination_closure(vectors: &[TropVector]) -> Result<Vec<TropVector>> {
    let limit = Guards::global().closure_vectors;
    let mut set: BTreeSet<TropVector> = vectors.iter().filter(|v| !v.is_infinity()).map(|v| v.normalized()).collect();
    loop {
        let cur: Vec<TropVector> = minimal_supports(&set)?;
        let mut added = false;
        let mut next: BTreeSet<TropVector> = cur.iter().cloned().collect();
        for (i, f) in cur.iter().enumerate() {
            for g in &cur[i + 1..] {
                for u in bits(f.support() & g.support()) {
                    let g2 = g.shift(&(f.0[u].finite().unwrap() - g.0[u].finite().unwrap()));
                    let mut h = f.oplus(&g2);
                    h.0[u] = TropScalar::Inf;
                    if h.is_infinity() {
                        continue;
                    }
                    let h = h.normalized();
                    if !next.contains(&h) && !cur.iter().any(|c| c.support() & !h.support() == 0) {
                        next.insert(h);
                        added = true;
                        check_guard("closure_vectors", limit, next.len())?;
                    }
                }
            }
        }
        if !added {
            return Ok(cur);
        }
        set = next;
    }
}

fn minimal_supports(set: &BTreeSet<TropVector>) -> Result<Vec<TropVector>> {
    let v: Vec<&TropVector> = set.iter().collect();
    let mut by_support: BTreeMap<Mask, TropVector> = BTreeMap::new();
    for a in &v {
        let s = a.support();
        if v.iter().any(|b| {
            let t = b.support();
            t != s && t & !s == 0
        }) {
            continue;
        }
        if let Some(old) = by_support.get(&s) {
            if old != *a {
                return Err(Error::NotMatroid("two vectors with the same minimal support are not proportional".into()));
            }
        }
        by_support.insert(s, (*a).clone());
    }
    Ok(by_support.into_values().collect())
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r.min(usize::MAX as u128) as usize
}

/// Advances a sorted k-combination of 0..n in lexicographic order.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_of_degree;
    use crate::scalar::q;

    fn fe(v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&x| FieldElem::int(x)).collect()
    }

    fn tv(v: &[Option<i64>]) -> TropVector {
        TropVector(v.iter().map(|x| x.map_or(TropScalar::Inf, TropScalar::int)).collect())
    }

    #[test]
    fn rank_one_two_adic() {
        let ground = vec![ExpVec(vec![1, 0]), ExpVec(vec![0, 1])];
        let m = VMatroid::from_rowspace(&vec![fe(&[1, 2])], ground, &ValuedField::RationalsPAdic(2)).unwrap();
        assert_eq!(m.rank(), 1);
        // p({x}) = val(2) = 1, p({y}) = val(1) = 0
        assert_eq!(m.value(0b01), TropScalar::int(1));
        assert_eq!(m.value(0b10), TropScalar::int(0));
        let c = m.fundamental_circuit(0b10, 0).unwrap();
        assert_eq!(c, tv(&[Some(0), Some(1)]));
    }

    #[test]
    fn point_ideal_degree_one() {
        let ground = monomials_of_degree(3, 1);
        let rows = vec![fe(&[-1, 1, 0]), fe(&[-1, 0, 1])];
        let m = VMatroid::from_rowspace(&rows, ground, &ValuedField::RationalsTrivial).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.num_bases(), 3);
        let cs = m.circuits().unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| popcount(c.support()) == 2 && c.min_coeff() == Some(q(0))));
        assert_eq!(m.check_exchange_axiom().unwrap(), None);
        assert_eq!(VMatroid::from_circuits(m.ground().to_vec(), &cs).unwrap(), m);
    }

    #[test]
    fn free_and_loops() {
        let ground = monomials_of_degree(2, 1);
        assert!(VMatroid::free(ground.clone()).circuits().unwrap().is_empty());
        let l = VMatroid::all_loops(ground);
        assert_eq!(l.circuits().unwrap().len(), 2);
    }

    #[test]
    fn elimination_routes_agree() {
        let ground = monomials_of_degree(3, 1);
        let f = fe(&[1, 1, 1]);
        let g = fe(&[1, 2, 4]);
        let fld = ValuedField::RationalsPAdic(2);
        let m = VMatroid::from_rowspace(&vec![f.clone(), g.clone()], ground, &fld).unwrap();
        let (tf, tg) = (classical_vector(&f, &fld), classical_vector(&g, &fld));
        let h = m.eliminate(&tf, &tg, 0).unwrap();
        assert_eq!(h, tv(&[None, Some(0), Some(0)]));
        let hc = eliminate_classical(&f, &g, 0, &fld).unwrap();
        assert!(satisfies_star(&tf, &tg, &hc, 0));
        assert!(m.contains_vector(&hc).unwrap());
    }

    #[test]
    fn open_pair_fails_monomial_elimination() {
        // {x1 ⊕ 0, x2 ⊕ 0} on ground (1, x1, x2)
        let a = tv(&[Some(0), Some(0), None]);
        let b = tv(&[Some(0), None, Some(0)]);
        assert!(check_monomial_elimination(&[a.clone(), b.clone()]).unwrap().is_some());
        let c = tv(&[None, Some(0), Some(0)]);
        assert_eq!(check_monomial_elimination(&[a, b, c]).unwrap(), None);
        assert_eq!(check_monomial_elimination(&[]).unwrap(), None);
    }

    #[test]
    fn restriction_routes_agree() {
        let ground = monomials_of_degree(3, 2);
        let fld = ValuedField::RationalsPAdic(2);
        // xy + xz + yz + 2z² in the basis x², xy, xz, y², yz, z²
        let m = VMatroid::from_rowspace(&vec![fe(&[0, 1, 1, 0, 1, 2])], ground, &fld).unwrap();
        for keep in [0b111111u64, 0b011110, 0b110110, 0b000111, 0b101010] {
            assert_eq!(m.restrict(keep).unwrap(), m.restrict_by_circuits(keep).unwrap(), "keep {keep:b}");
        }
    }

    #[test]
    fn basis_membership_matches_circuit_span() {
        let ground = monomials_of_degree(3, 1);
        let fld = ValuedField::RationalsPAdic(2);
        let m = VMatroid::from_rowspace(&vec![fe(&[1, 1, 1]), fe(&[1, 2, 4])], ground, &fld).unwrap();
        let cands = [
            tv(&[None, Some(0), Some(0)]),
            tv(&[Some(0), Some(0), Some(0)]),
            tv(&[Some(0), Some(1), Some(0)]),
            tv(&[Some(0), Some(1), Some(2)]),
            tv(&[Some(0), None, Some(0)]),
            tv(&[Some(1), Some(0), None]),
            tv(&[Some(0), None, None]),
        ];
        for c in &cands {
            assert_eq!(m.is_vector(c).unwrap(), m.contains_vector(c).unwrap(), "{c:?}");
        }
        assert_eq!(m.rank_of(0b011), 1);
        assert!(m.is_independent(0b100));
        assert!(!m.is_independent(0b110));
    }

    #[test]
    fn combinations_enumerate_binomial() {
        let mut c = vec![0, 1, 2];
        let mut count = 1;
        while next_combination(&mut c, 6) {
            count += 1;
        }
        assert_eq!(count, binomial(6, 3));
    }
}
