//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned time limit.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};
use tropical_core::complex::{groebner_complex, hypersurface, normal_complex, same_support, weighted_equal, WeightedComplex};
use tropical_core::field::{FieldElem, ValuedField};
use tropical_core::ideal::{IdealTruncation, CAVEAT_CLOSURE};
use tropical_core::matroid::check_monomial_elimination;
use tropical_core::multiplicity::variety;
use tropical_core::poly::{Ambient, ExpVec, TermOrder, TropPoly};
use tropical_core::polyhedron::Polyhedron;
use tropical_core::scalar::{q, qf, TropScalar, Q};
use tropical_core::univariate::{convexify, factor};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

struct Suite {
    failures: Vec<String>,
}

impl Suite {
    fn run(&mut self, id: &str, title: &str, limit: Duration, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let hook = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let outcome = catch_unwind(AssertUnwindSafe(f));
        std::panic::set_hook(hook);
        let took = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(Ok(d)) if took <= limit => (true, d),
            Ok(Ok(d)) => (false, format!("{d}; exceeded the time limit")),
            Ok(Err(e)) => (false, e),
            Err(p) => (false, format!("panic: {}", p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())),
        };
        println!(
            "[{}] criterion {id}: {title} ({} ms, limit {} ms) {detail}",
            if pass { "PASS" } else { "FAIL" },
            took.as_millis(),
            limit.as_millis()
        );
        if !pass {
            self.failures.push(id.to_string());
        }
    }
}

fn uni(src: &str) -> TropPoly {
    trop(src, &["x"], Ambient::Affine(1))
}

fn criterion_1() -> Check {
    let f = uni("min(3x, 1 + 2x, x, 1)");
    let lin = |r: i64| uni(&format!("min(x, {r})"));
    let expected = lin(0).pow(2).mul(&lin(1)).unwrap();
    let c = ok(convexify(&f), "convexify")?;
    ensure(c == expected, format!("convexification {c} differs from (x ⊕ 0)² ⊙ (x ⊕ 1)"))?;
    let fa = ok(factor(&f), "factor")?;
    ensure(fa.expand(Ambient::Affine(1)) == expected, "factorization does not expand to the convexification")?;
    let roots: Vec<(Q, u64)> = fa.roots.iter().map(|r| (r.w.clone(), r.mult)).collect();
    ensure(roots == vec![(q(0), 2), (q(1), 1)], format!("roots {roots:?}"))?;
    ensure(fa.mult_at(&q(0)) == 2, "mult_0 ≠ 2")?;
    Ok(format!("factorization {}", fa.display("x")))
}

fn criterion_2() -> Check {
    let p = point_ideal(3);
    let mi = p.initial_ideal_termorder(TermOrder::RevLex);
    let gens = vec![ExpVec(vec![1, 0, 0]), ExpVec(vec![0, 1, 0])];
    ensure(mi.generators == gens, format!("in_≺ generators {:?}", mi.generators))?;
    let cone = ok(p.term_order_cone(TermOrder::RevLex), "cone")?;
    let expect =
        Polyhedron::new(3, vec![(vec![q(1), q(0), q(-1)], q(0)), (vec![q(0), q(1), q(-1)], q(0))], vec![]).unwrap();
    ensure(cone == expect, "term-order cone differs from {w0 ≤ w2, w1 ≤ w2}")?;
    ensure(cone.in_relint(&[q(0), q(0), q(1)]) && !cone.in_relint(&[q(0), q(1), q(1)]), "interior membership")?;
    let f = trop("min(x0, x1)", &["x0", "x1", "x2"], Ambient::Projective(3));
    let inw = ok(f.initial_form(&[q(1), q(0), q(2)]), "initial form")?;
    ensure(inw == trop("x1", &["x0", "x1", "x2"], Ambient::Projective(3)), format!("in_(1,0,2) = {inw}"))?;
    Ok("in_≺(I) = ⟨x0, x1⟩; cone interior {w0 < w2, w1 < w2}; in_(1,0,2)(x0 ⊕ x1) = x1".into())
}

fn criterion_3() -> Check {
    let conic = conic_2adic(3);
    let g = ok(groebner_complex(&conic, 2), "Gröbner complex")?;
    let n = ok(normal_complex(&conic_trop().dehomogenize().unwrap()), "normal complex")?;
    ensure(g == n, "Gröbner complex at D = 2 differs from N(xy ⊕ xz ⊕ yz ⊕ 1⊙z²)")?;
    let r = ok(g.recession_fan(), "recession fan")?;
    let t = ok(groebner_complex(&conic.trivialize(), 2), "trivialized Gröbner complex")?;
    ensure(r == t, "recession fan differs cell-by-cell from the trivialized Gröbner fan")?;
    ensure(same_support(&r, &t), "supports differ")?;
    let g3 = ok(groebner_complex(&conic, 3), "Gröbner complex at D = 3")?;
    Ok(format!(
        "{} cells, {} maximal; recession fan = trivialized fan; D = 3 {}",
        g.cells().len(),
        g.maximal_cells().len(),
        if g3 == g { "stable" } else { "refines further" }
    ))
}

fn criterion_4() -> Check {
    let base = example_35(2).to_explicit();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let s = ok(base.specialize(2, &TropScalar::zero(), &mut rng), "specialize")?;
    let n = s.names().to_vec();
    ensure(n == names(&["x0", "x1", "x2"]), format!("names {n:?}"))?;
    let target = trop("min(x1, x2)", &["x0", "x1", "x2"], Ambient::Projective(3));
    let c1 = ok(s.circuits(1), "circuits")?;
    ensure(c1.contains(&target), "x1 ⊕ x2 missing from the degree-1 circuits")?;
    ensure(s.caveats().iter().any(|c| c == CAVEAT_CLOSURE), "closure caveat missing")?;
    let shown: Vec<String> = c1.iter().map(|f| f.display_with(&n)).collect();
    Ok(format!("degree-1 circuits {}", shown.join(", ")))
}

/// Zero-dimensional instance: degree by Hilbert polynomial and by independent sets, multiplicities by
/// cell multiplicity and by saturated initial ideals, compared with a brute-force root oracle.
fn degree_vs_multiplicities(i: &IdealTruncation, oracle: &[(Vec<Q>, u64)]) -> std::result::Result<String, String> {
    let h = ok(i.hilbert_polynomial(), "Hilbert polynomial")?;
    ensure(h.dimension == 0, format!("dimension {}", h.dimension))?;
    let ind = ok(i.independent_set_size(i.degree_bound()), "independent set")?;
    ensure(ind as u64 == h.degree, format!("independent-set size {ind} vs degree {}", h.degree))?;
    let total: u64 = oracle.iter().map(|(_, m)| m).sum();
    ensure(total == h.degree, format!("oracle total {total} vs degree {}", h.degree))?;
    for (w, m) in oracle {
        let got = ok(i.multiplicity_zero_dim(w), "multiplicity")?;
        ensure(got == *m, format!("mult at {w:?}: {got} vs oracle {m}"))?;
    }
    if i.chart_dim() == 1 {
        let v = ok(variety(i, i.degree_bound()), "variety")?;
        let wc = v.weighted.ok_or("no weights")?;
        let mut got: Vec<(Vec<Q>, u64)> = wc.cells().iter().map(|(c, m)| (c.relint_point().to_vec(), *m)).collect();
        got.sort();
        let mut want = oracle.to_vec();
        want.sort();
        ensure(got == want, format!("weighted variety {got:?} vs oracle {want:?}"))?;
    }
    Ok(format!("{} = {}", h.degree, oracle.iter().map(|(_, m)| m.to_string()).collect::<Vec<_>>().join(" + ")))
}

fn criterion_5() -> Check {
    // univariate oracles: roots of the tropical polynomial read off its lower hull
    let cubic_roots: Vec<(Vec<Q>, u64)> =
        factor(&uni("min(3x, 1 + 2x, x, 1)")).unwrap().roots.iter().map(|r| (vec![r.w.clone()], r.mult)).collect();
    let a = degree_vs_multiplicities(&cubic(4), &cubic_roots)?;
    let b = degree_vs_multiplicities(&two_roots_t(4), &[(vec![q(0)], 1), (vec![q(1)], 1)])?;
    // solve x + y + 1 = 0, x + 2y + 4 = 0 over ℚ and take 2-adic valuations
    let (x, y) = (Q::from_integer(2.into()), Q::from_integer((-3).into()));
    ensure(&x + &y + q(1) == q(0) && &x + q(2) * &y + q(4) == q(0), "oracle solution")?;
    let field = ValuedField::parse("p-adic:2").unwrap();
    let val = |v: &Q| field.val(&FieldElem::Rat(v.clone())).finite().unwrap().clone();
    let c = degree_vs_multiplicities(&two_lines(3), &[(vec![val(&x), val(&y)], 1)])?;
    Ok(format!("cubic {a}; (x-1)(x-t) {b}; two lines {c}"))
}

fn weights(w: &WeightedComplex) -> Vec<u64> {
    w.cells().iter().map(|(_, m)| *m).collect()
}

fn criterion_6() -> Check {
    let l = ok(variety(&line(2), 1), "variety of the line")?.weighted.ok_or("no weights")?;
    ensure(weights(&l) == vec![1, 1, 1], format!("line weights {:?}", weights(&l)))?;
    ensure(ok(l.is_balanced(), "balance")?, "line is not balanced")?;
    let d = ok(variety(&doubled_line(2), 2), "variety of x²+y²+1")?.weighted.ok_or("no weights")?;
    ensure(weights(&d) == vec![2, 2, 2], format!("cell multiplicities {:?}", weights(&d)))?;
    let h = ok(hypersurface(&trop("min(2x, 2y, 0)", &["x", "y"], Ambient::Affine(2))), "hypersurface")?;
    ensure(weighted_equal(&d, &h), "cell multiplicities disagree with lattice lengths")?;
    ensure(ok(d.is_balanced(), "balance")?, "x²+y²+1 is not balanced")?;
    let mutant = d.with_weights(&[2, 2, 1]).unwrap();
    let w = ok(mutant.check_balanced(), "balance")?.ok_or("mutant accepted")?;
    let at: Vec<String> = w.cell.relint_point().iter().map(tropical_core::scalar::fmt_q).collect();
    Ok(format!("mutant rejected at ({}) with weighted sum {:?}", at.join(", "), w.sum.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn criterion_7() -> Check {
    let conic = conic_2adic(3);
    let v = ok(variety(&conic, 2), "variety")?.weighted.ok_or("no weights")?;
    let mut out = Vec::new();
    for (label, w) in [("vertex", vec![q(0), q(0)]), ("edge", vec![q(0), qf(-1, 2)])] {
        let star = v.star(&w);
        let init = ok(conic.initial_ideal(&w), "initial ideal")?;
        let vi = ok(variety(&init, 2), "variety of in_w")?.weighted.ok_or("no weights for in_w")?;
        ensure(weighted_equal(&star, &vi), format!("star ≠ V(in_w(I)) at the {label} witness"))?;
        out.push(format!("{label}: {} cones, weights {:?}", star.cells().len(), weights(&star)));
    }
    Ok(out.join("; "))
}

fn criterion_8() -> Check {
    let conic = conic_t(3);
    let v = ok(variety(&conic, 2), "variety")?.weighted.ok_or("no weights")?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut out = Vec::new();
    for (label, a) in [("generic a = 1", q(1)), ("a = 0 through the vertices", q(0))] {
        let st = ok(v.stable_intersect_hyperplane(0, &a), "stable intersection")?;
        let s = ok(conic.specialize(1, &TropScalar::Fin(a.clone()), &mut rng), "specialize")?;
        let sv = ok(variety(&s, 2), "variety of the specialization")?.weighted.ok_or("no weights")?;
        ensure(weighted_equal(&st, &sv), format!("{label}: stable intersection ≠ specialized variety"))?;
        ensure(st.total_weight() == 2, format!("{label}: total weight {}", st.total_weight()))?;
        let pts: Vec<String> =
            st.cells().iter().map(|(c, m)| format!("{}×{m}", tropical_core::scalar::fmt_q(&c.relint_point()[0]))).collect();
        out.push(format!("{label}: {}", pts.join(", ")));
    }
    Ok(out.join("; "))
}

fn criterion_9a() -> Check {
    let mut checked = 0;
    let mut skipped = 0;
    for (name, i, _) in corpus() {
        for (d, m) in i.parts().iter().enumerate() {
            match m.check_exchange_axiom() {
                Ok(None) => checked += 1,
                Ok(Some(w)) => return Err(format!("{name}, degree {d}: exchange fails {w:?}")),
                Err(tropical_core::Error::Guard { .. }) => skipped += 1,
                Err(e) => return Err(e.to_string()),
            }
            match m.circuits().and_then(|c| check_monomial_elimination(&c)) {
                Ok(None) => checked += 1,
                Ok(Some(w)) => return Err(format!("{name}, degree {d}: elimination fails {w:?}")),
                Err(tropical_core::Error::Guard { .. }) => skipped += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!("{checked} checks passed, {skipped} skipped by size guards"))
}

fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| qf(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect()
}

fn criterion_9b() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut count = 0;
    for (name, i, _) in corpus() {
        let h = i.hilbert_values();
        for _ in 0..4 {
            let w = random_weight(&mut rng, i.chart_dim());
            let hw = ok(i.initial_ideal(&w), "initial ideal")?.hilbert_values();
            ensure(hw == h, format!("{name}: H of in_w at {w:?} is {hw:?}, H is {h:?}"))?;
            count += 1;
        }
        for order in [TermOrder::Lex, TermOrder::RevLex] {
            let mi = i.initial_ideal_termorder(order);
            let hs: Vec<u64> = mi.standard.iter().map(|s| s.len() as u64).collect();
            ensure(hs == h, format!("{name}: standard monomials {hs:?} vs H {h:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} comparisons"))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> TropPoly {
    let k = rng.gen_range(1..=6);
    let terms: Vec<(ExpVec, Q)> =
        (0..k).map(|_| (ExpVec((0..n).map(|_| rng.gen_range(0..=3)).collect()), qf(rng.gen_range(-5..=5), rng.gen_range(1..=2)))).collect();
    TropPoly::from_terms(Ambient::Affine(n), terms).unwrap()
}

fn criterion_9c() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for case in 0..100 {
        let f = random_poly(&mut rng, 3);
        let a = qf(rng.gen_range(-4..=4), rng.gen_range(1..=2));
        let w = random_weight(&mut rng, 2);
        let triv_l = f.specialize(2, &TropScalar::Fin(a.clone())).unwrap().trivialize();
        let triv_r = f.trivialize().specialize(2, &TropScalar::zero()).unwrap();
        ensure(triv_l == triv_r, format!("case {case}: trivialization does not commute for {f}"))?;
        let lhs = f.specialize(2, &TropScalar::Fin(a.clone())).unwrap().initial_form(&w).unwrap();
        let mut wa = w.clone();
        wa.push(a.clone());
        let rhs = f.initial_form(&wa).unwrap().specialize(2, &TropScalar::zero()).unwrap();
        ensure(lhs == rhs, format!("case {case}: in_w(f|a) ≠ in_(w,a)(f)|0 for {f}, w {w:?}, a {a}"))?;
    }
    Ok("100 instances, both identities".into())
}

/// Specializations of corpus ideals at sampled values of one variable.
fn specializations() -> Vec<(String, IdealTruncation, IdealTruncation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut out = Vec::new();
    let cases: Vec<(&str, IdealTruncation, usize, Vec<Q>)> = vec![
        ("t-adic conic", conic_t(4), 1, vec![q(1), q(0), q(-1)]),
        ("line x+y+1", line(4), 0, vec![q(0)]),
        ("x^2+y^2+1", doubled_line(4), 1, vec![q(0)]),
        ("x1-1, x2-x3", example_35(3), 2, vec![q(0)]),
    ];
    for (name, i, var, values) in cases {
        for a in values {
            let s = i.specialize(var, &TropScalar::Fin(a.clone()), &mut rng).unwrap();
            out.push((format!("{name} at {var} = {a}"), i.clone(), s));
        }
    }
    let p = point_ideal(4);
    out.push(("point ideal at x2 = 0".into(), p.clone(), p.specialize(2, &TropScalar::zero(), &mut rng).unwrap()));
    out
}

fn criterion_9d() -> Check {
    let cases = specializations();
    for (name, i, s) in &cases {
        let d0 = ok(i.dimension(), name)?;
        let d1 = ok(s.dimension(), name)?;
        ensure(d1 <= d0 - 1, format!("{name}: dimension {d0} → {d1}"))?;
    }
    Ok(format!("{} specializations", cases.len()))
}

fn criterion_9e() -> Check {
    let mut n = 0;
    for (name, i, expect) in corpus() {
        let h = ok(i.dimension(), name)?;
        let c = ok(i.dimension_via_coordinates(), name)?;
        ensure(h == c && h == expect, format!("{name}: Hilbert {h}, coordinates {c}, expected {expect}"))?;
        n += 1;
    }
    Ok(format!("{n} ideals agree"))
}

#[test]
fn acceptance() {
    let mut s = Suite { failures: vec![] };
    let secs = Duration::from_secs;
    s.run("1", "univariate convexification and factorization", secs(1), criterion_1);
    s.run("2", "point ideal term order, cone and initial form", secs(1), criterion_2);
    s.run("3", "conic Gröbner complex and recession fan", secs(5), criterion_3);
    s.run("4", "explicit specialization by elimination closure", secs(1), criterion_4);
    s.run("5", "degree equals the sum of multiplicities", secs(5), criterion_5);
    s.run("6", "balancing and cell multiplicities", secs(2), criterion_6);
    s.run("7", "weighted stars equal varieties of initial ideals", secs(2), criterion_7);
    s.run("8", "specialization equals stable intersection", secs(5), criterion_8);
    s.run("9a", "exchange axiom and monomial elimination on the corpus", secs(10), criterion_9a);
    s.run("9b", "Hilbert functions of initial ideals", secs(10), criterion_9b);
    s.run("9c", "specialization commutes with trivialization and initial forms", secs(10), criterion_9c);
    s.run("9d", "specialization drops dimension", secs(10), criterion_9d);
    s.run("9e", "coordinate dimension equals Hilbert dimension", secs(10), criterion_9e);
    assert!(s.failures.is_empty(), "failing criteria: {:?}", s.failures);
}
