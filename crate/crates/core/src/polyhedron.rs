//! Rational polyhedra in canonical H-representation.
//!
//! Canonical form: equations in reduced row echelon form (pivot coefficient 1); every inequality
//! reduced modulo the equations, scaled so its first nonzero coefficient has absolute value 1,
//! irredundant, and the list sorted. Two polyhedra are equal iff their canonical forms agree.

use crate::linalg::{kernel, rref};
use crate::lp::{feasible_point, maximize, Constraint, LpResult};
use crate::scalar::{abs_q, Q};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

#[derive(Clone, Debug)]
pub struct Polyhedron {
    n: usize,
    eqs: Vec<Constraint>,
    ineqs: Vec<Constraint>,
    point: Vec<Q>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.eqs == o.eqs && self.ineqs == o.ineqs
    }
}
impl Eq for Polyhedron {}
impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Polyhedron {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.n, &self.eqs, &self.ineqs).cmp(&(o.n, &o.eqs, &o.ineqs))
    }
}
impl Hash for Polyhedron {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.n.hash(h);
        self.eqs.hash(h);
        self.ineqs.hash(h);
    }
}

fn dot(a: &[Q], x: &[Q]) -> Q {
    a.iter().zip(x).filter(|(c, _)| !c.is_zero()).map(|(c, y)| c * y).sum()
}

fn normalize(a: &[Q], b: &Q) -> Option<Constraint> {
    let lead = a.iter().find(|x| !x.is_zero())?;
    let s = abs_q(lead);
    Some((a.iter().map(|x| x / &s).collect(), b / &s))
}

/// Reduces (a, b) modulo RREF equations with the given pivot columns.
fn reduce(a: &[Q], b: &Q, eqs: &[Constraint], pivots: &[usize]) -> (Vec<Q>, Q) {
    let mut a = a.to_vec();
    let mut b = b.clone();
    for ((e, c), &p) in eqs.iter().zip(pivots) {
        if a[p].is_zero() {
            continue;
        }
        let f = a[p].clone();
        for (x, y) in a.iter_mut().zip(e) {
            *x -= &f * y;
        }
        b -= &f * c;
    }
    (a, b)
}

impl Polyhedron {
    /// {x : a·x ≤ b for ineqs, a·x = b for eqs}, or None when empty.
    pub fn new(n: usize, ineqs: Vec<Constraint>, eqs: Vec<Constraint>) -> Option<Self> {
        debug_assert!(ineqs.iter().chain(&eqs).all(|(a, _)| a.len() == n));
        feasible_point(n, &ineqs, &eqs)?;
        // implicit equalities: maximize t subject to a·x + t ≤ b, t ≤ 1
        let mut ext: Vec<Constraint> = ineqs
            .iter()
            .map(|(a, b)| {
                let mut a = a.clone();
                a.push(Q::one());
                (a, b.clone())
            })
            .collect();
        let mut cap = vec![Q::zero(); n + 1];
        cap[n] = Q::one();
        ext.push((cap, Q::one()));
        let eqs_ext: Vec<Constraint> = eqs
            .iter()
            .map(|(a, b)| {
                let mut a = a.clone();
                a.push(Q::zero());
                (a, b.clone())
            })
            .collect();
        let mut obj = vec![Q::zero(); n + 1];
        obj[n] = Q::one();
        let (tstar, xt) = match maximize(&obj, &ext, &eqs_ext) {
            LpResult::Optimal { x, value } => (value, x),
            _ => unreachable!("feasible and bounded by the cap"),
        };
        let mut all_eqs = eqs.clone();
        let mut strict: Vec<Constraint> = Vec::new();
        let point: Vec<Q>;
        if tstar.is_positive() {
            strict = ineqs.clone();
            point = xt[..n].to_vec();
        } else {
            // only inequalities tight at the LP optimum can be implicit equalities; test each by
            // minimizing its slack over the polyhedron
            let x0 = xt[..n].to_vec();
            for (a, b) in &ineqs {
                if dot(a, &x0) != *b {
                    strict.push((a.clone(), b.clone()));
                    continue;
                }
                let neg: Vec<Q> = a.iter().map(|x| -x).collect();
                match maximize(&neg, &ineqs, &eqs) {
                    LpResult::Optimal { ref value, .. } if &-value == b => all_eqs.push((a.clone(), b.clone())),
                    _ => strict.push((a.clone(), b.clone())),
                }
            }
            // relative interior point: maximize t over the affine hull
            let ext: Vec<Constraint> = strict
                .iter()
                .map(|(a, b)| {
                    let mut a = a.clone();
                    a.push(Q::one());
                    (a, b.clone())
                })
                .chain(std::iter::once({
                    let mut cap = vec![Q::zero(); n + 1];
                    cap[n] = Q::one();
                    (cap, Q::one())
                }))
                .collect();
            let eqs_ext: Vec<Constraint> = all_eqs
                .iter()
                .map(|(a, b)| {
                    let mut a = a.clone();
                    a.push(Q::zero());
                    (a, b.clone())
                })
                .collect();
            point = match maximize(&obj, &ext, &eqs_ext) {
                LpResult::Optimal { x, value } => {
                    debug_assert!(value.is_positive() || strict.is_empty());
                    x[..n].to_vec()
                }
                _ => unreachable!("the affine hull contains the polyhedron"),
            };
        }
        // canonical equations
        let mut m: Vec<Vec<Q>> = all_eqs
            .iter()
            .map(|(a, b)| {
                let mut r = a.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let pivots = rref(&mut m);
        let eqs_c: Vec<Constraint> = m.iter().map(|r| (r[..n].to_vec(), r[n].clone())).collect();
        // canonical inequalities
        let mut cand: Vec<Constraint> = Vec::new();
        for (a, b) in &strict {
            let (a, b) = reduce(a, b, &eqs_c, &pivots);
            match normalize(&a, &b) {
                Some(c) => cand.push(c),
                None => debug_assert!(!b.is_negative()),
            }
        }
        cand.sort();
        // parallel duplicates share the normalized a; the smallest b is kept
        cand.dedup_by(|later, earlier| later.0 == earlier.0);
        // drop redundant inequalities one at a time
        let mut i = 0;
        while i < cand.len() {
            let others: Vec<Constraint> = cand.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect();
            let redundant = match maximize(&cand[i].0, &others, &eqs_c) {
                LpResult::Optimal { value, .. } => value <= cand[i].1,
                _ => false,
            };
            if redundant {
                cand.remove(i);
            } else {
                i += 1;
            }
        }
        Some(Polyhedron { n, eqs: eqs_c, ineqs: cand, point })
    }

    pub fn whole(n: usize) -> Self {
        Polyhedron { n, eqs: vec![], ineqs: vec![], point: vec![Q::zero(); n] }
    }

    pub fn point(p: &[Q]) -> Self {
        let n = p.len();
        let eqs = (0..n)
            .map(|i| {
                let mut a = vec![Q::zero(); n];
                a[i] = Q::one();
                (a, p[i].clone())
            })
            .collect();
        Polyhedron { n, eqs, ineqs: vec![], point: p.to_vec() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.eqs.len()
    }

    pub fn equations(&self) -> &[Constraint] {
        &self.eqs
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.ineqs
    }

    /// A point in the relative interior.
    pub fn relint_point(&self) -> &[Q] {
        &self.point
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.eqs.iter().all(|(a, b)| dot(a, x) == *b) && self.ineqs.iter().all(|(a, b)| dot(a, x) <= *b)
    }

    pub fn in_relint(&self, x: &[Q]) -> bool {
        self.eqs.iter().all(|(a, b)| dot(a, x) == *b) && self.ineqs.iter().all(|(a, b)| dot(a, x) < *b)
    }

    fn constraints(&self) -> (Vec<Constraint>, Vec<Constraint>) {
        (self.ineqs.clone(), self.eqs.clone())
    }

    pub fn intersect(&self, o: &Polyhedron) -> Option<Polyhedron> {
        let (mut i, mut e) = self.constraints();
        let (i2, e2) = o.constraints();
        i.extend(i2);
        e.extend(e2);
        Polyhedron::new(self.n, i, e)
    }

    /// Adds constraints to this polyhedron.
    pub fn with(&self, ineqs: &[Constraint], eqs: &[Constraint]) -> Option<Polyhedron> {
        let (mut i, mut e) = self.constraints();
        i.extend(ineqs.iter().cloned());
        e.extend(eqs.iter().cloned());
        Polyhedron::new(self.n, i, e)
    }

    pub fn is_subset_of(&self, o: &Polyhedron) -> bool {
        let (i, e) = o.constraints();
        i.iter().all(|(a, b)| match maximize(a, &self.ineqs, &self.eqs) {
            LpResult::Optimal { value, .. } => value <= *b,
            _ => false,
        }) && e.iter().all(|(a, b)| {
            let neg: Vec<Q> = a.iter().map(|x| -x).collect();
            matches!(maximize(a, &self.ineqs, &self.eqs), LpResult::Optimal { ref value, .. } if value == b)
                && matches!(maximize(&neg, &self.ineqs, &self.eqs), LpResult::Optimal { ref value, .. } if &-value == b)
        })
    }

    /// Facets: each irredundant inequality made tight.
    pub fn facets(&self) -> Vec<Polyhedron> {
        let mut out: Vec<Polyhedron> = (0..self.ineqs.len())
            .filter_map(|k| {
                let others: Vec<Constraint> =
                    self.ineqs.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, c)| c.clone()).collect();
                let mut e = self.eqs.clone();
                e.push(self.ineqs[k].clone());
                Polyhedron::new(self.n, others, e)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All nonempty faces, including the polyhedron itself.
    pub fn faces(&self) -> Vec<Polyhedron> {
        let mut out = vec![self.clone()];
        let mut frontier = vec![self.clone()];
        while let Some(p) = frontier.pop() {
            for f in p.facets() {
                if !out.contains(&f) {
                    out.push(f.clone());
                    frontier.push(f);
                }
            }
        }
        out.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.cmp(b)));
        out
    }

    /// Whether self is a nonempty face of o.
    pub fn is_face_of(&self, o: &Polyhedron) -> bool {
        if !self.is_subset_of(o) {
            return false;
        }
        // the smallest face of o containing a relative interior point of self
        let x = &self.point;
        let mut e = o.eqs.clone();
        let mut i = Vec::new();
        for c in &o.ineqs {
            if dot(&c.0, x) == c.1 {
                e.push(c.clone());
            } else {
                i.push(c.clone());
            }
        }
        Polyhedron::new(self.n, i, e).is_some_and(|f| f == *self)
    }

    pub fn recession_cone(&self) -> Polyhedron {
        let z = |cs: &[Constraint]| cs.iter().map(|(a, _)| (a.clone(), Q::zero())).collect::<Vec<_>>();
        Polyhedron::new(self.n, z(&self.ineqs), z(&self.eqs)).expect("cones contain the origin")
    }

    /// Basis of the lineality space.
    pub fn lineality_space(&self) -> Vec<Vec<Q>> {
        let rows: Vec<Vec<Q>> = self.eqs.iter().chain(&self.ineqs).map(|(a, _)| a.clone()).collect();
        kernel(&rows, self.n)
    }

    /// Basis of the linear space parallel to the affine hull.
    pub fn direction_space(&self) -> Vec<Vec<Q>> {
        let rows: Vec<Vec<Q>> = self.eqs.iter().map(|(a, _)| a.clone()).collect();
        kernel(&rows, self.n)
    }

    pub fn is_bounded(&self) -> bool {
        self.recession_cone().dim() == 0
    }

    /// The cone of feasible directions at x ∈ self, translated to the origin.
    pub fn tangent_cone(&self, x: &[Q]) -> Polyhedron {
        let ineqs: Vec<Constraint> =
            self.ineqs.iter().filter(|(a, b)| dot(a, x) == *b).map(|(a, _)| (a.clone(), Q::zero())).collect();
        let eqs: Vec<Constraint> = self.eqs.iter().map(|(a, _)| (a.clone(), Q::zero())).collect();
        Polyhedron::new(self.n, ineqs, eqs).expect("cones contain the origin")
    }

    /// The slice {x_i = value}, with coordinate i removed.
    pub fn slice_coordinate(&self, i: usize, value: &Q) -> Option<Polyhedron> {
        let drop = |cs: &[Constraint]| {
            cs.iter()
                .map(|(a, b)| {
                    let mut a2 = a.clone();
                    let c = a2.remove(i);
                    (a2, b - c * value)
                })
                .collect::<Vec<Constraint>>()
        };
        Polyhedron::new(self.n - 1, drop(&self.ineqs), drop(&self.eqs))
    }

    /// Image under x ↦ A x + t  for an invertible square A.
    pub fn affine_image(&self, a: &[Vec<Q>], t: &[Q]) -> Option<Polyhedron> {
        let inv = crate::linalg::inverse(&a.to_vec())?;
        // y = A x + t  ⇔  x = A⁻¹ (y − t); constraint c·x ≤ b becomes (c A⁻¹) y ≤ b + c A⁻¹ t
        let map = |cs: &[Constraint]| {
            cs.iter()
                .map(|(c, b)| {
                    let row: Vec<Q> = (0..self.n).map(|j| (0..self.n).map(|k| &c[k] * &inv[k][j]).sum()).collect();
                    let shift = dot(&row, t);
                    (row, b + shift)
                })
                .collect::<Vec<Constraint>>()
        };
        Polyhedron::new(self.n, map(&self.ineqs), map(&self.eqs))
    }
}
