//! Degree-truncated homogeneous tropical ideals, stored as one valuated matroid per degree.
//!
//! Coordinates are homogeneous throughout: index 0 is x_0. Affine input is homogenized and
//! saturated by x_0; Laurent input is cleared of denominators, homogenized and saturated by every
//! variable. Varieties live in the chart w_0 = 0, i.e. in ℝ^{n} for n + 1 homogeneous variables.

use crate::cideal::ClassicalIdeal;
use crate::classical::ClassicalPoly;
use crate::error::{Error, Result};
use crate::field::ValuedField;
use crate::matroid::{bits, check_monomial_elimination, elimination_closure, popcount, Mask, TropVector, VMatroid};
use crate::poly::{monomials_of_degree, Ambient, ExpVec, TermOrder, TropPoly};
use crate::polyhedron::Polyhedron;
use crate::scalar::{q, TropScalar, Q};
use crate::univariate::{convexify, factor, UniFactorization};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Extra classical degrees kept above the bound so that saturation can be verified through it.
pub const SATURATION_SLACK: usize = 2;
/// Number of trailing equal finite differences required before a Hilbert polynomial is accepted.
pub const HILBERT_WINDOW: usize = 3;
/// Rounds of the explicit elimination-closure builder.
pub const CLOSURE_ROUNDS: usize = 8;
/// Independent pairs of generic lifts tried by the specialization certificate.
pub const GENERICITY_RETRIES: usize = 3;

pub const CAVEAT_CLOSURE: &str = "elimination-closure, possibly incomplete";
pub const CAVEAT_P_ADIC: &str = "p-adic specialization: genericity certified by repetition only";

#[derive(Clone, Debug)]
pub struct Realization {
    pub field: ValuedField,
    /// Homogeneous generators in the truncation's variables.
    pub generators: Vec<ClassicalPoly>,
    /// The working classical ideal (saturated as the ambient requires), stored above the bound.
    pub ideal: ClassicalIdeal,
    /// Stored tropical values are classical valuations divided by this factor (t ↦ t^k rescaling).
    pub val_scale: Q,
}

#[derive(Clone, Debug)]
pub enum Provenance {
    Realizable(Box<Realization>),
    Explicit,
}

#[derive(Clone, Debug)]
pub struct IdealTruncation {
    input: Ambient,
    input_names: Vec<String>,
    names: Vec<String>,
    parts: Vec<VMatroid>,
    provenance: Provenance,
    caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HilbertPolynomial {
    pub values: Vec<u64>,
    /// Coefficients of the polynomial in d, constant term first.
    #[serde(with = "crate::scalar::qvec_string")]
    pub coefficients: Vec<Q>,
    /// −1 when the Hilbert function is eventually zero.
    pub dimension: i64,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    /// Standard monomials in each degree, in ground order.
    pub standard: Vec<Vec<ExpVec>>,
    /// Minimal generators up to the bound, by degree then ground order.
    pub generators: Vec<ExpVec>,
}

#[derive(Clone, Debug)]
pub struct TwoVariableWitness {
    pub degree: usize,
    /// A circuit supported on x_i^{d−k} x_j^k.
    pub circuit: TropPoly,
    /// convexify(circuit) ⊙ circuit, homogeneous of degree 2d.
    pub product: TropPoly,
    pub factorization: UniFactorization,
    /// Whether the product equals its own convexification, so that it splits into linear factors.
    pub splits: bool,
    /// Membership of the product in the degree-2d part, when 2d is within the bound.
    pub in_ideal: Option<bool>,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub rank: usize,
    pub ground: usize,
    /// None when the size guard prevented the check.
    pub exchange_axiom: Option<bool>,
    pub monomial_elimination: Option<bool>,
    pub multiplication: Option<bool>,
    pub notes: Vec<String>,
}

fn homogenizing_name(names: &[String]) -> String {
    ["x0", "h", "x_0", "hom"].iter().map(|s| s.to_string()).find(|c| !names.contains(c)).unwrap_or_else(|| "__h".into())
}

fn saturation_vars(input: Ambient, nhom: usize) -> Vec<usize> {
    match input {
        Ambient::Projective(_) => vec![],
        Ambient::Affine(_) => vec![0],
        Ambient::Laurent(_) => (0..nhom).collect(),
    }
}

fn parts_from_classical(ideal: &ClassicalIdeal, top: usize, field: &ValuedField, scale: &Q) -> Result<Vec<VMatroid>> {
    let inv = Q::one() / scale;
    (0..=top).map(|d| ideal.matroid(d, field).map(|m| if scale.is_one() { m } else { m.scale_values(&inv) })).collect()
}

fn mask_where(ground: &[ExpVec], pred: impl Fn(&ExpVec) -> bool) -> Mask {
    ground.iter().enumerate().filter(|(_, u)| pred(u)).fold(0, |m, (i, _)| m | 1 << i)
}

/// Homogeneous tropical polynomials in nhom variables for the given input ambient.
fn homogenize_tropical(f: &TropPoly, input: Ambient) -> Result<TropPoly> {
    match input {
        Ambient::Projective(_) => {
            if !f.is_homogeneous() {
                return Err(Error::AmbientMismatch("projective input must be homogeneous".into()));
            }
            f.with_ambient(input)
        }
        Ambient::Affine(_) => f.with_ambient(input)?.homogenize(),
        Ambient::Laurent(n) => {
            let Some(first) = f.terms().keys().next() else { return Ok(TropPoly::infinity(Ambient::Projective(n + 1))) };
            let mut m = first.clone();
            for u in f.terms().keys() {
                for (a, b) in m.0.iter_mut().zip(&u.0) {
                    *a = (*a).min(*b);
                }
            }
            f.mul_monomial(&m.scale(-1)).with_ambient(Ambient::Affine(n))?.homogenize()
        }
    }
}

impl IdealTruncation {
    /// Tropicalization of the ideal generated by classical polynomials in the input variables.
    pub fn tropicalize(
        input_names: &[String],
        input: Ambient,
        field: ValuedField,
        gens: &[ClassicalPoly],
        bound: usize,
    ) -> Result<Self> {
        if input_names.len() != input.nvars() {
            return Err(Error::LengthMismatch { expected: input.nvars(), got: input_names.len() });
        }
        let (names, hom): (Vec<String>, Vec<ClassicalPoly>) = match input {
            Ambient::Projective(_) => (input_names.to_vec(), gens.to_vec()),
            Ambient::Affine(_) => {
                if gens.iter().any(|g| g.terms().keys().any(|u| !u.is_nonneg())) {
                    return Err(Error::AmbientMismatch("negative exponent in an affine generator".into()));
                }
                (Self::with_h(input_names), gens.iter().filter(|g| !g.is_zero()).map(|g| g.homogenize()).collect())
            }
            Ambient::Laurent(_) => (
                Self::with_h(input_names),
                gens.iter().filter(|g| !g.is_zero()).map(|g| g.clear_monomial().homogenize()).collect(),
            ),
        };
        if let Some(g) = hom.iter().find(|g| g.max_degree().is_some_and(|e| e as usize > bound)) {
            return Err(Error::DegreeBound(format!(
                "generator of degree {} exceeds the degree bound {bound}",
                g.max_degree().unwrap()
            )));
        }
        let nhom = names.len();
        let sat = saturation_vars(input, nhom);
        let top = bound + if sat.is_empty() { 0 } else { SATURATION_SLACK };
        let mut ideal = ClassicalIdeal::from_generators(&hom, nhom, top)?;
        let mut caveats = Vec::new();
        if !sat.is_empty() {
            let (s, verified) = ideal.saturate(&sat);
            ideal = s;
            if verified.map_or(true, |v| v < bound) {
                caveats.push(format!("saturation verified only through degree {}", verified.map_or(-1, |v| v as i64)));
            }
        }
        let parts = parts_from_classical(&ideal, bound, &field, &Q::one())?;
        Ok(IdealTruncation {
            input,
            input_names: input_names.to_vec(),
            names,
            parts,
            provenance: Provenance::Realizable(Box::new(Realization { field, generators: hom, ideal, val_scale: Q::one() })),
            caveats,
        })
    }

    /// An explicit truncation from tropical polynomials. With `complete`, projective input is read
    /// as the full circuit list of each degree and validated; otherwise the polynomials are closed
    /// under multiplication, elimination and the ambient's saturation, and the result is flagged.
    pub fn from_tropical(input_names: &[String], input: Ambient, gens: &[TropPoly], bound: usize, complete: bool) -> Result<Self> {
        if input_names.len() != input.nvars() {
            return Err(Error::LengthMismatch { expected: input.nvars(), got: input_names.len() });
        }
        let names = match input {
            Ambient::Projective(_) => input_names.to_vec(),
            _ => Self::with_h(input_names),
        };
        let nhom = names.len();
        let hom: Vec<TropPoly> =
            gens.iter().filter(|g| !g.is_infinity()).map(|g| homogenize_tropical(g, input)).collect::<Result<_>>()?;
        if let Some(g) = hom.iter().find(|g| g.max_degree().unwrap() as usize > bound) {
            return Err(Error::DegreeBound(format!(
                "polynomial of degree {} exceeds the degree bound {bound}",
                g.max_degree().unwrap()
            )));
        }
        let sat = saturation_vars(input, nhom);
        if complete && sat.is_empty() {
            let mut parts = Vec::new();
            for d in 0..=bound {
                let ground = monomials_of_degree(nhom, d as i64);
                let vs: Vec<TropVector> = hom
                    .iter()
                    .filter(|g| g.max_degree() == Some(d as i64))
                    .map(|g| TropVector::from_poly(g, &ground))
                    .collect::<Result<_>>()?;
                parts.push(if vs.is_empty() { VMatroid::free(ground) } else { VMatroid::from_circuits(ground, &vs)? });
            }
            let t = IdealTruncation {
                input,
                input_names: input_names.to_vec(),
                names,
                parts,
                provenance: Provenance::Explicit,
                caveats: vec![],
            };
            for d in 0..bound {
                if t.check_multiplication(d)? == Some(false) {
                    return Err(Error::NotMatroid(format!(
                        "degree-{d} circuits times a variable are not vectors in degree {}",
                        d + 1
                    )));
                }
            }
            return Ok(t);
        }
        let parts = closure_build(nhom, bound, &hom, &sat)?;
        Ok(IdealTruncation {
            input,
            input_names: input_names.to_vec(),
            names,
            parts,
            provenance: Provenance::Explicit,
            caveats: vec![CAVEAT_CLOSURE.into()],
        })
    }

    fn with_h(names: &[String]) -> Vec<String> {
        let mut v = vec![homogenizing_name(names)];
        v.extend(names.iter().cloned());
        v
    }

    fn derived(&self, parts: Vec<VMatroid>, provenance: Provenance) -> IdealTruncation {
        IdealTruncation {
            input: self.input,
            input_names: self.input_names.clone(),
            names: self.names.clone(),
            parts,
            provenance,
            caveats: self.caveats.clone(),
        }
    }

    pub fn input_ambient(&self) -> Ambient {
        self.input
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    /// Homogeneous variable names, x_0 first.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Dimension of the chart ℝ^n in which varieties are computed.
    pub fn chart_dim(&self) -> usize {
        self.names.len() - 1
    }

    pub fn degree_bound(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn part(&self, d: usize) -> Result<&VMatroid> {
        self.parts.get(d).ok_or_else(|| Error::DegreeBound(format!("degree {d} exceeds the bound {}", self.degree_bound())))
    }

    pub fn parts(&self) -> &[VMatroid] {
        &self.parts
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn realization(&self) -> Option<&Realization> {
        match &self.provenance {
            Provenance::Realizable(r) => Some(r),
            Provenance::Explicit => None,
        }
    }

    pub fn caveats(&self) -> &[String] {
        &self.caveats
    }

    pub fn add_caveat(&mut self, c: impl Into<String>) {
        let c = c.into();
        if !self.caveats.contains(&c) {
            self.caveats.push(c);
        }
    }

    /// Forgets the realization, keeping the tropical data.
    pub fn to_explicit(&self) -> IdealTruncation {
        self.derived(self.parts.clone(), Provenance::Explicit)
    }

    /// The first `bound + 1` degrees.
    pub fn truncate(&self, bound: usize) -> IdealTruncation {
        let mut t = self.derived(self.parts[..=bound.min(self.degree_bound())].to_vec(), self.provenance.clone());
        if let Provenance::Realizable(r) = &mut t.provenance {
            r.ideal = r.ideal.truncate(bound.max(r.ideal.top().min(bound + SATURATION_SLACK)));
        }
        t
    }

    /// Converts a weight of length n + 1, or a chart weight of length n (w_0 = 0), to homogeneous form.
    pub fn homogeneous_weight(&self, w: &[Q]) -> Result<Vec<Q>> {
        let n = self.nvars();
        if w.len() == n {
            Ok(w.to_vec())
        } else if w.len() + 1 == n {
            let mut v = vec![Q::zero()];
            v.extend(w.iter().cloned());
            Ok(v)
        } else {
            Err(Error::LengthMismatch { expected: n - 1, got: w.len() })
        }
    }

    /// Circuits of degree d as homogeneous polynomials.
    pub fn circuits(&self, d: usize) -> Result<Vec<TropPoly>> {
        self.part(d)?.circuits_as_polys(Ambient::Projective(self.nvars()))
    }

    /// Circuits of degree d, dehomogenized to the chart.
    pub fn chart_circuits(&self, d: usize) -> Result<Vec<TropPoly>> {
        self.circuits(d)?.iter().map(|f| f.dehomogenize()).collect()
    }

    // ---------- Hilbert data ----------

    pub fn hilbert_function(&self, d: usize) -> Result<u64> {
        Ok(self.part(d)?.rank() as u64)
    }

    pub fn hilbert_values(&self) -> Vec<u64> {
        self.parts.iter().map(|m| m.rank() as u64).collect()
    }

    /// The polynomial agreeing with H on the top of the truncation, once some finite difference is
    /// constant on the last `HILBERT_WINDOW` values.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial> {
        let values = self.hilbert_values();
        let top = values.len() - 1;
        let mut diff: Vec<Q> = values.iter().map(|&v| q(v as i64)).collect();
        for e in 0..values.len() {
            if diff.len() < HILBERT_WINDOW {
                break;
            }
            let tail = &diff[diff.len() - HILBERT_WINDOW..];
            if tail.iter().all(|x| *x == tail[0]) {
                let c = tail[0].clone();
                if c.is_zero() {
                    return Ok(HilbertPolynomial { values, coefficients: vec![], dimension: -1, degree: 0 });
                }
                // interpolate through d = top − e, …, top
                let mut m: Vec<Vec<Q>> = (top - e..=top)
                    .map(|d| {
                        let mut row: Vec<Q> = (0..=e).map(|k| num_traits::pow(q(d as i64), k)).collect();
                        row.push(q(values[d] as i64));
                        row
                    })
                    .collect();
                crate::linalg::rref(&mut m);
                let coefficients: Vec<Q> = m.iter().map(|r| r[e + 1].clone()).collect();
                let degree = c.to_integer().to_u64().ok_or_else(|| Error::Invalid("non-integral degree".into()))?;
                return Ok(HilbertPolynomial { values, coefficients, dimension: e as i64, degree });
            }
            diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Err(Error::NotStabilized(format!(
            "stabilization window not reached: no finite difference of H is constant on the last {HILBERT_WINDOW} of degrees 0..={top}"
        )))
    }

    pub fn dimension(&self) -> Result<i64> {
        Ok(self.hilbert_polynomial()?.dimension)
    }

    pub fn degree(&self) -> Result<u64> {
        let h = self.hilbert_polynomial()?;
        if h.dimension < 0 {
            return Err(Error::Invalid("the unit ideal has no degree".into()));
        }
        Ok(h.degree)
    }

    /// Size of a maximal set of top-degree monomials containing no circuit support, found greedily
    /// from the circuits; for a zero-dimensional ideal this is its degree.
    pub fn independent_set_size(&self, d: usize) -> Result<usize> {
        let m = self.part(d)?;
        let supports: Vec<Mask> = m.circuits()?.iter().map(|c| c.support()).collect();
        let mut s: Mask = 0;
        for e in 0..m.len() {
            let t = s | 1 << e;
            if !supports.iter().any(|c| c & !t == 0) {
                s = t;
            }
        }
        Ok(popcount(s))
    }

    // ---------- initial ideals and term orders ----------

    pub fn initial_ideal(&self, w: &[Q]) -> Result<IdealTruncation> {
        let w = self.homogeneous_weight(w)?;
        let parts = self.parts.iter().map(|m| m.initial_matroid_at(&w)).collect::<Result<_>>()?;
        Ok(self.derived(parts, Provenance::Explicit))
    }

    pub fn trivialize(&self) -> IdealTruncation {
        self.derived(self.parts.iter().map(|m| m.trivialize()).collect(), Provenance::Explicit)
    }

    fn standard_mask(m: &VMatroid, order: TermOrder) -> Mask {
        let mut idx: Vec<usize> = (0..m.len()).collect();
        idx.sort_by(|&a, &b| order.compare(&m.ground()[b], &m.ground()[a]));
        let mut s: Mask = 0;
        for i in idx {
            if m.is_independent(s | 1 << i) {
                s |= 1 << i;
            }
        }
        s
    }

    pub fn initial_ideal_termorder(&self, order: TermOrder) -> MonomialIdeal {
        let mut standard = Vec::new();
        let mut generators: Vec<ExpVec> = Vec::new();
        for m in &self.parts {
            let s = Self::standard_mask(m, order);
            standard.push(bits(s).map(|i| m.ground()[i].clone()).collect());
            for (i, u) in m.ground().iter().enumerate() {
                if s >> i & 1 == 0 && !generators.iter().any(|g| g.divides(u)) {
                    generators.push(u.clone());
                }
            }
        }
        MonomialIdeal { standard, generators }
    }

    /// Closure of {w : in_w(C) = x^u for the fundamental circuit C of every minimal generator u
    /// over the standard monomials}, in ℝ^{n+1}.
    pub fn term_order_cone(&self, order: TermOrder) -> Result<Polyhedron> {
        let mi = self.initial_ideal_termorder(order);
        let n = self.nvars();
        let mut ineqs = Vec::new();
        for u in &mi.generators {
            let d = u.degree() as usize;
            let m = &self.parts[d];
            let b = Self::standard_mask(m, order);
            let e = m.index_of(u).expect("generator in the ground set");
            let c = m.fundamental_circuit(b, e)?;
            let cu = c.0[e].finite().unwrap().clone();
            for x in bits(c.support()).filter(|&x| x != e) {
                let v = &m.ground()[x];
                let a: Vec<Q> = u.0.iter().zip(&v.0).map(|(p, r)| q(p - r)).collect();
                ineqs.push((a, c.0[x].finite().unwrap() - &cu));
            }
        }
        let cone = Polyhedron::new(n, ineqs, vec![])
            .ok_or_else(|| Error::Invalid("term-order cone is empty".into()))?;
        if cone.recession_cone().dim() != n {
            return Err(Error::Invalid("term-order cone has a lower-dimensional recession cone".into()));
        }
        Ok(cone)
    }

    // ---------- colon and saturation ----------

    /// (I : x^m), valid through degree D − deg m.
    pub fn colon(&self, m: &ExpVec) -> Result<IdealTruncation> {
        if m.len() != self.nvars() || !m.is_nonneg() {
            return Err(Error::Invalid("colon needs a monomial in the homogeneous variables".into()));
        }
        let k = m.degree() as usize;
        if k > self.degree_bound() {
            return Err(Error::DegreeBound(format!("colon by a degree-{k} monomial exhausts the truncation")));
        }
        if let Provenance::Realizable(r) = &self.provenance {
            let ideal = r.ideal.colon_monomial(m)?;
            let top = self.degree_bound() - k;
            let parts = parts_from_classical(&ideal, top, &r.field, &r.val_scale)?;
            let mut r2 = (**r).clone();
            r2.ideal = ideal;
            return Ok(self.derived(parts, Provenance::Realizable(Box::new(r2))));
        }
        let mut parts = Vec::new();
        for d in 0..=self.degree_bound() - k {
            let up = &self.parts[d + k];
            let keep = mask_where(up.ground(), |u| m.divides(u));
            let r = up.restrict(keep)?;
            let ground: Vec<ExpVec> = r.ground().iter().map(|u| u.sub(m)).collect();
            debug_assert_eq!(ground, monomials_of_degree(self.nvars(), d as i64));
            parts.push(r.relabel(ground)?);
        }
        Ok(self.derived(parts, Provenance::Explicit))
    }

    /// (I : x_i^∞) for every listed variable, iterated until a colon step changes nothing in the
    /// degrees it can see. Each effective step loses one degree of the truncation.
    pub fn saturate_vars(&self, vars: &[usize]) -> Result<IdealTruncation> {
        if let Provenance::Realizable(r) = &self.provenance {
            let (ideal, verified) = r.ideal.saturate(vars);
            let top = match verified {
                Some(v) => self.degree_bound().min(v),
                None => 0,
            };
            let parts = parts_from_classical(&ideal, top, &r.field, &r.val_scale)?;
            let mut r2 = (**r).clone();
            r2.ideal = ideal;
            let mut t = self.derived(parts, Provenance::Realizable(Box::new(r2)));
            if top < self.degree_bound() {
                t.add_caveat(format!("saturation verified only through degree {top}"));
            }
            return Ok(t);
        }
        let mut cur = self.clone();
        loop {
            let mut changed = false;
            for &i in vars {
                if cur.degree_bound() == 0 {
                    return Err(Error::DegreeBound("saturation exhausted the truncation".into()));
                }
                let next = cur.colon(&ExpVec::unit(cur.nvars(), i))?;
                if next.parts[..] != cur.parts[..next.parts.len()] {
                    cur = next;
                    changed = true;
                }
            }
            if !changed {
                return Ok(cur);
            }
        }
    }

    /// (I : m^∞) as the verified prefix of the colon chain.
    pub fn saturate(&self, m: &ExpVec) -> Result<IdealTruncation> {
        let vars: Vec<usize> = (0..m.len()).filter(|&i| m.0[i] > 0).collect();
        self.saturate_vars(&vars)
    }

    /// Saturation by the product of all variables (the torus part).
    pub fn torus_saturation(&self) -> Result<IdealTruncation> {
        self.saturate_vars(&(0..self.nvars()).collect::<Vec<_>>())
    }

    // ---------- specialization and elimination ----------

    fn homogeneous_index(&self, i: usize) -> Result<usize> {
        match self.input {
            Ambient::Projective(_) => {
                if i == 0 || i >= self.nvars() {
                    return Err(Error::Invalid(format!("projective specialization needs a variable index in 1..{}", self.nvars())));
                }
                Ok(i)
            }
            _ => {
                if i >= self.input.nvars() {
                    return Err(Error::Invalid(format!("variable index {i} out of range")));
                }
                Ok(i + 1)
            }
        }
    }

    fn input_index(&self, h: usize) -> usize {
        match self.input {
            Ambient::Projective(_) => h,
            _ => h - 1,
        }
    }

    /// I|_{x_i = a} for the input variable i (homogeneous index i for projective input).
    pub fn specialize<R: Rng>(&self, i: usize, a: &TropScalar, rng: &mut R) -> Result<IdealTruncation> {
        let h = self.homogeneous_index(i)?;
        if a.is_inf() && matches!(self.input, Ambient::Laurent(_)) {
            return Err(Error::Invalid("specialization at ∞ needs an affine or projective ideal".into()));
        }
        let mut input_names = self.input_names.clone();
        input_names.remove(self.input_index(h));
        let mut names = self.names.clone();
        names.remove(h);
        let input = self.input.with_nvars(self.input.nvars() - 1);
        let nhom = names.len();
        let mut sat = saturation_vars(input, nhom);
        if sat.is_empty() {
            sat = vec![0];
        }
        let bound = self.degree_bound();
        let mut caveats = self.caveats.clone();
        let (parts, provenance) = match &self.provenance {
            Provenance::Realizable(r) => {
                let attempt = |rng: &mut R| -> Result<(Vec<VMatroid>, Realization)> {
                    let (base, scale, alpha) = match a {
                        TropScalar::Inf => (r.ideal.clone(), r.val_scale.clone(), None),
                        TropScalar::Fin(a) => {
                            let x = a * &r.val_scale;
                            let k = x.denom().clone();
                            if !k.is_one() && !r.field.has_parameter() {
                                return Err(Error::Invalid(format!(
                                    "value {a} is not in the value group of {}",
                                    r.field.name()
                                )));
                            }
                            let kk = k.to_usize().ok_or_else(|| Error::Invalid("denominator too large".into()))?;
                            let e = (&x * Q::from_integer(k.clone())).to_integer().to_i64().unwrap();
                            let base = if kk > 1 { r.ideal.compose_t_power(kk) } else { r.ideal.clone() };
                            let alpha = r.field.random_of_valuation(e, rng)?;
                            (base, &r.val_scale * Q::from_integer(k), Some(alpha))
                        }
                    };
                    let sub = match &alpha {
                        Some(al) => base.substitute_projective(h, al)?,
                        None => base.substitute_zero(h)?,
                    };
                    let (ideal, _) = sub.saturate(&sat);
                    let parts = parts_from_classical(&ideal, bound, &r.field, &scale)?;
                    let generators = r
                        .generators
                        .iter()
                        .map(|g| match &alpha {
                            Some(al) => g.compose_t_power(scale_ratio(&scale, &r.val_scale)).substitute_projective(h, al),
                            None => g.substitute(h, &crate::field::FieldElem::zero()),
                        })
                        .collect();
                    Ok((parts, Realization { field: r.field.clone(), generators, ideal, val_scale: scale }))
                };
                if a.is_inf() {
                    let (p, real) = attempt(rng)?;
                    (p, Provenance::Realizable(Box::new(real)))
                } else {
                    let mut found = None;
                    for _ in 0..GENERICITY_RETRIES {
                        let (p1, real) = attempt(rng)?;
                        let (p2, _) = attempt(rng)?;
                        if p1 == p2 {
                            found = Some((p1, real));
                            break;
                        }
                    }
                    let (p, real) = found.ok_or_else(|| {
                        Error::Genericity(format!("independent generic lifts disagreed in {GENERICITY_RETRIES} attempts"))
                    })?;
                    if matches!(r.field, ValuedField::RationalsPAdic(_)) {
                        caveats.push(CAVEAT_P_ADIC.into());
                    }
                    (p, Provenance::Realizable(Box::new(real)))
                }
            }
            Provenance::Explicit => {
                let mut seeds = Vec::new();
                for d in 0..=bound {
                    for c in self.circuits(d)? {
                        let s = c.specialize_projective(h, a)?;
                        if !s.is_infinity() {
                            seeds.push(s);
                        }
                    }
                }
                if !caveats.iter().any(|c| c == CAVEAT_CLOSURE) {
                    caveats.push(CAVEAT_CLOSURE.into());
                }
                (closure_build(nhom, bound, &seeds, &sat)?, Provenance::Explicit)
            }
        };
        Ok(IdealTruncation { input, input_names, names, parts, provenance, caveats })
    }

    /// I ∩ ℝ̄[x_j : j ∈ keep] for input variable indices (homogeneous indices for projective input).
    pub fn eliminate_vars(&self, keep: &[usize]) -> Result<IdealTruncation> {
        let mut hkeep: Vec<usize> = match self.input {
            Ambient::Projective(_) => keep.to_vec(),
            _ => std::iter::once(0).chain(keep.iter().map(|k| k + 1)).collect(),
        };
        hkeep.sort_unstable();
        hkeep.dedup();
        if hkeep.iter().any(|&k| k >= self.nvars()) {
            return Err(Error::Invalid("variable index out of range".into()));
        }
        let names: Vec<String> = hkeep.iter().map(|&k| self.names[k].clone()).collect();
        let input_names: Vec<String> = match self.input {
            Ambient::Projective(_) => names.clone(),
            _ => names[1..].to_vec(),
        };
        let input = self.input.with_nvars(input_names.len());
        let (parts, provenance) = match &self.provenance {
            Provenance::Realizable(r) => {
                let ideal = r.ideal.restrict_vars(&hkeep);
                let parts = parts_from_classical(&ideal, self.degree_bound(), &r.field, &r.val_scale)?;
                let generators = ideal.polys(0).into_iter().chain((1..=ideal.top()).flat_map(|d| ideal.polys(d))).collect();
                (parts, Provenance::Realizable(Box::new(Realization { field: r.field.clone(), generators, ideal, val_scale: r.val_scale.clone() })))
            }
            Provenance::Explicit => {
                let mut parts = Vec::new();
                for m in &self.parts {
                    let mask = mask_where(m.ground(), |u| (0..u.len()).all(|j| u.0[j] == 0 || hkeep.contains(&j)));
                    let r = m.restrict(mask)?;
                    let ground: Vec<ExpVec> = r.ground().iter().map(|u| ExpVec(hkeep.iter().map(|&k| u.0[k]).collect())).collect();
                    parts.push(r.relabel(ground)?);
                }
                (parts, Provenance::Explicit)
            }
        };
        Ok(IdealTruncation { input, input_names, names, parts, provenance, caveats: self.caveats.clone() })
    }

    /// max |S| over chart coordinate sets S such that the torus-saturated ideal has no nonzero
    /// element in the variables x_0 and x_S up to the bound; −1 for the unit ideal.
    pub fn dimension_via_coordinates(&self) -> Result<i64> {
        let t = self.torus_saturation()?;
        if t.parts[0].rank() == 0 {
            return Ok(-1);
        }
        let n = self.chart_dim();
        let obstructed = |s: &[usize]| {
            t.parts.iter().any(|m| {
                let k = mask_where(m.ground(), |u| (1..=n).all(|j| u.0[j] == 0 || s.contains(&j)));
                m.rank_of(k) < popcount(k)
            })
        };
        for size in (0..=n).rev() {
            let mut c: Vec<usize> = (1..=size).collect();
            loop {
                if !obstructed(&c) {
                    return Ok(size as i64);
                }
                let mut z: Vec<usize> = c.iter().map(|x| x - 1).collect();
                if !crate::matroid::next_combination(&mut z, n) {
                    break;
                }
                c = z.iter().map(|x| x + 1).collect();
            }
        }
        Ok(-1)
    }

    /// A nonzero element supported on {x_i^{d−k} x_j^k} of lowest degree, with its splitting product.
    pub fn two_variable_witness(&self, i: usize, j: usize) -> Result<TwoVariableWitness> {
        let n = self.nvars();
        if i >= n || j >= n || i == j {
            return Err(Error::Invalid("two distinct homogeneous variable indices are required".into()));
        }
        for d in 1..=self.degree_bound() {
            let m = &self.parts[d];
            let mask = mask_where(m.ground(), |u| (0..n).all(|k| k == i || k == j || u.0[k] == 0));
            if m.rank_of(mask) == popcount(mask) {
                continue;
            }
            let r = m.restrict(mask)?;
            let c = r.circuits()?.into_iter().next().expect("dependent set has a circuit");
            let circuit = c.to_poly(r.ground(), Ambient::Projective(n));
            let uni = |f: &TropPoly| {
                TropPoly::from_terms(Ambient::Affine(1), f.terms().iter().map(|(u, c)| (ExpVec(vec![u.0[j]]), c.clone())).collect::<Vec<_>>())
            };
            let fu = uni(&circuit)?;
            let gu = convexify(&fu)?.mul(&fu)?;
            let factorization = factor(&gu)?;
            let splits = convexify(&gu)? == gu;
            let top = 2 * d as i64;
            let product = TropPoly::from_terms(
                Ambient::Projective(n),
                gu.terms()
                    .iter()
                    .map(|(k, c)| {
                        let mut e = vec![0; n];
                        e[j] = k.0[0];
                        e[i] = top - k.0[0];
                        (ExpVec(e), c.clone())
                    })
                    .collect::<Vec<_>>(),
            )?;
            let in_ideal = if 2 * d <= self.degree_bound() {
                let big = &self.parts[2 * d];
                Some(big.is_vector(&TropVector::from_poly(&product, big.ground())?)?)
            } else {
                None
            };
            return Ok(TwoVariableWitness { degree: d, circuit, product, factorization, splits, in_ideal });
        }
        Err(Error::DegreeBound(format!("no element in variables {i}, {j} up to degree {}", self.degree_bound())))
    }

    /// Degree of (in_w(I) : (x_0⋯x_n)^∞) for a zero-dimensional I; 0 exactly off the variety.
    pub fn multiplicity_zero_dim(&self, w: &[Q]) -> Result<u64> {
        let dim = self.dimension()?;
        if dim != 0 {
            return Err(Error::Invalid(format!("multiplicity of a point needs a zero-dimensional ideal (dimension {dim})")));
        }
        let j = self.initial_ideal(w)?.to_explicit();
        let s = j.torus_saturation()?;
        let h = s.hilbert_polynomial()?;
        match h.dimension {
            -1 => Ok(0),
            0 => Ok(h.degree),
            d => Err(Error::Invalid(format!("initial ideal has dimension {d}"))),
        }
    }

    /// The ideal of trop(φ)(V(I)) = Aᵀ V(I) + λ, from chart circuits: a term c ⊙ x^v becomes
    /// (c − λ·A⁻¹v) ⊙ x^{A⁻¹v}. The result is Laurent, rebuilt by elimination closure.
    pub fn change_coordinates(&self, a: &[Vec<i64>], lambda: &[Q]) -> Result<IdealTruncation> {
        let n = self.chart_dim();
        if a.len() != n || a.iter().any(|r| r.len() != n) || lambda.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: a.len() });
        }
        let aq: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        if crate::linalg::det(&aq).abs() != Q::one() {
            return Err(Error::Invalid("coordinate change must be unimodular".into()));
        }
        let inv = crate::linalg::inverse(&aq).expect("unimodular");
        let mut images = Vec::new();
        for d in 0..=self.degree_bound() {
            for f in self.chart_circuits(d)? {
                let terms: Vec<(ExpVec, Q)> = f
                    .terms()
                    .iter()
                    .map(|(v, c)| {
                        let img: Vec<Q> = (0..n).map(|r| (0..n).map(|k| &inv[r][k] * q(v.0[k])).sum()).collect();
                        let shift: Q = img.iter().zip(lambda).map(|(x, l)| x * l).sum();
                        (ExpVec(img.iter().map(|x| x.to_integer().to_i64().unwrap()).collect()), c - shift)
                    })
                    .collect();
                images.push(TropPoly::from_terms(Ambient::Laurent(n), terms)?);
            }
        }
        let hom: Vec<TropPoly> = images.iter().map(|f| homogenize_tropical(f, Ambient::Laurent(n))).collect::<Result<_>>()?;
        let bound = hom.iter().filter_map(|f| f.max_degree()).max().unwrap_or(0).max(self.degree_bound() as i64) as usize;
        let names: Vec<String> = self.names[1..].to_vec();
        let mut t = IdealTruncation::from_tropical(&names, Ambient::Laurent(n), &images, bound, false)?;
        for c in &self.caveats {
            t.add_caveat(c.clone());
        }
        Ok(t)
    }

    // ---------- validation ----------

    /// Whether x_i ⊙ C is a vector in degree d + 1 for every degree-d circuit C; None past a guard.
    pub fn check_multiplication(&self, d: usize) -> Result<Option<bool>> {
        if d + 1 > self.degree_bound() {
            return Ok(Some(true));
        }
        let circuits = match self.parts[d].circuits() {
            Ok(c) => c,
            Err(Error::Guard { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let lo = self.parts[d].ground();
        let up = &self.parts[d + 1];
        for c in &circuits {
            let f = c.to_poly(lo, Ambient::Projective(self.nvars()));
            for i in 0..self.nvars() {
                let g = f.mul_monomial(&ExpVec::unit(self.nvars(), i));
                if !up.is_vector(&TropVector::from_poly(&g, up.ground())?)? {
                    return Ok(Some(false));
                }
            }
        }
        Ok(Some(true))
    }

    /// Exchange axiom, monomial elimination and multiplication compatibility, degree by degree.
    pub fn validate(&self) -> Result<Vec<DegreeReport>> {
        let mut out = Vec::new();
        for (d, m) in self.parts.iter().enumerate() {
            let mut r = DegreeReport { degree: d, rank: m.rank(), ground: m.len(), ..Default::default() };
            match m.check_exchange_axiom() {
                Ok(w) => r.exchange_axiom = Some(w.is_none()),
                Err(Error::Guard { name, limit, needed }) => r.notes.push(format!("exchange axiom skipped: guard `{name}` {needed} > {limit}")),
                Err(e) => return Err(e),
            }
            match m.circuits().and_then(|c| check_monomial_elimination(&c)) {
                Ok(w) => r.monomial_elimination = Some(w.is_none()),
                Err(Error::Guard { name, limit, needed }) => {
                    r.notes.push(format!("monomial elimination skipped: guard `{name}` {needed} > {limit}"))
                }
                Err(e) => return Err(e),
            }
            r.multiplication = self.check_multiplication(d)?;
            if r.multiplication.is_none() {
                r.notes.push("multiplication check skipped: circuit guard".into());
            }
            out.push(r);
        }
        Ok(out)
    }
}

fn scale_ratio(new: &Q, old: &Q) -> usize {
    (new / old).to_integer().to_usize().unwrap_or(1)
}

fn shift_vector(c: &TropVector, from: &[ExpVec], to: &[ExpVec], m: &ExpVec) -> TropVector {
    let mut v = TropVector::infinity(to.len());
    for (i, x) in c.0.iter().enumerate() {
        if !x.is_inf() {
            let u = from[i].add(m);
            let j = to.iter().position(|g| *g == u).expect("product monomial has the next degree");
            v.0[j] = x.clone();
        }
    }
    v
}

/// Per-degree closure of homogeneous seeds under multiplication by variables, elimination, and
/// division by the listed variables, repeated until stable.
fn closure_build(nhom: usize, top: usize, seeds: &[TropPoly], sat: &[usize]) -> Result<Vec<VMatroid>> {
    let grounds: Vec<Vec<ExpVec>> = (0..=top).map(|d| monomials_of_degree(nhom, d as i64)).collect();
    let mut extra: Vec<Vec<TropVector>> = vec![Vec::new(); top + 1];
    for s in seeds {
        let d = s.max_degree().unwrap() as usize;
        if d <= top {
            extra[d].push(TropVector::from_poly(s, &grounds[d])?.normalized());
        }
    }
    let mut closed: Vec<Vec<TropVector>> = vec![Vec::new(); top + 1];
    let mut stable = false;
    for _ in 0..CLOSURE_ROUNDS {
        let before = closed.clone();
        for d in 0..=top {
            let mut gens = extra[d].clone();
            gens.extend(closed[d].iter().cloned());
            if d > 0 {
                for c in &closed[d - 1] {
                    for i in 0..nhom {
                        gens.push(shift_vector(c, &grounds[d - 1], &grounds[d], &ExpVec::unit(nhom, i)));
                    }
                }
            }
            closed[d] = elimination_closure(&gens)?;
        }
        for d in 1..=top {
            for c in closed[d].clone() {
                for &i in sat {
                    if bits(c.support()).all(|x| grounds[d][x].0[i] > 0) {
                        let mut v = TropVector::infinity(grounds[d - 1].len());
                        for x in bits(c.support()) {
                            let u = grounds[d][x].sub(&ExpVec::unit(nhom, i));
                            let j = grounds[d - 1].iter().position(|g| *g == u).unwrap();
                            v.0[j] = c.0[x].clone();
                        }
                        let v = v.normalized();
                        if !extra[d - 1].contains(&v) {
                            extra[d - 1].push(v);
                        }
                    }
                }
            }
        }
        if closed == before {
            stable = true;
            break;
        }
    }
    if !stable {
        return Err(Error::NotStabilized(format!("elimination closure did not stabilize in {CLOSURE_ROUNDS} rounds")));
    }
    (0..=top)
        .map(|d| {
            if closed[d].is_empty() {
                Ok(VMatroid::free(grounds[d].clone()))
            } else {
                VMatroid::from_circuits(grounds[d].clone(), &closed[d])
            }
        })
        .collect()
}
