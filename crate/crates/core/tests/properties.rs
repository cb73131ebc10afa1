//! Randomized invariants of polynomials, univariate factorization, valuated matroids and hypersurfaces.

use num_traits::{One, Zero};
use proptest::prelude::*;
use tropical_core::complex::hypersurface;
use tropical_core::field::{FieldElem, ValuedField};
use tropical_core::matroid::{bits, satisfies_star, TropVector, VMatroid};
use tropical_core::poly::{monomials_of_degree, Ambient, ExpVec, TropPoly};
use tropical_core::scalar::{q, qf, TropScalar, Q};
use tropical_core::univariate::{convexify, factor};

fn rational() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

fn weight(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rational(), n)
}

fn poly(n: usize, amb: Ambient, maxdeg: i64) -> impl Strategy<Value = TropPoly> {
    prop::collection::vec((prop::collection::vec(0..=maxdeg, n), rational()), 1..7)
        .prop_map(move |ts| TropPoly::from_terms(amb, ts.into_iter().map(|(u, c)| (ExpVec(u), c))).unwrap())
}

fn affine(n: usize) -> impl Strategy<Value = TropPoly> {
    poly(n, Ambient::Affine(n), 3)
}

fn homogeneous(n: usize, d: i64) -> impl Strategy<Value = TropPoly> {
    let mons = monomials_of_degree(n, d);
    let k = mons.len();
    prop::collection::vec((0..k, rational()), 1..7).prop_map(move |ts| {
        TropPoly::from_terms(Ambient::Projective(n), ts.into_iter().map(|(i, c)| (mons[i].clone(), c))).unwrap()
    })
}

/// Values c_u + u·w of every term, by direct evaluation.
fn term_values(f: &TropPoly, w: &[Q]) -> Vec<Q> {
    f.terms().iter().map(|(u, c)| c + u.0.iter().zip(w).map(|(e, x)| q(*e) * x).sum::<Q>()).collect()
}

fn attained_twice(f: &TropPoly, w: &[Q]) -> bool {
    let v = term_values(f, w);
    let m = v.iter().min().unwrap();
    v.iter().filter(|x| *x == m).count() >= 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_a_semiring_homomorphism(f in affine(2), g in affine(2), w in weight(2)) {
        let s = f.add(&g).unwrap().eval(&w).unwrap();
        prop_assert_eq!(s, f.eval(&w).unwrap().oplus(&g.eval(&w).unwrap()));
        let p = f.mul(&g).unwrap().eval(&w).unwrap();
        prop_assert_eq!(p, f.eval(&w).unwrap().odot(&g.eval(&w).unwrap()));
    }

    #[test]
    fn initial_forms_commute_with_monomials(f in affine(3), u in prop::collection::vec(0i64..3, 3), w in weight(3)) {
        let u = ExpVec(u);
        prop_assert_eq!(f.mul_monomial(&u).initial_form(&w).unwrap(), f.initial_form(&w).unwrap().mul_monomial(&u));
    }

    #[test]
    fn initial_forms_commute_with_dehomogenization(f in homogeneous(3, 3), w in weight(2)) {
        let mut w0 = vec![Q::zero()];
        w0.extend(w.iter().cloned());
        let lhs = f.initial_form(&w0).unwrap().dehomogenize().unwrap();
        prop_assert_eq!(lhs, f.dehomogenize().unwrap().initial_form(&w).unwrap());
    }

    #[test]
    fn homogenization_round_trips(f in affine(2), k in 0i64..3) {
        let h = f.homogenize().unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize().unwrap(), f.clone());
        let d = f.max_degree().unwrap() + k;
        prop_assert_eq!(f.homogenize_to(d).unwrap(), h.mul_monomial(&ExpVec(vec![k, 0, 0])));
    }

    #[test]
    fn specialization_commutes_with_trivialization(f in affine(3), a in rational()) {
        let lhs = f.specialize(2, &TropScalar::Fin(a)).unwrap().trivialize();
        prop_assert_eq!(lhs, f.trivialize().specialize(2, &TropScalar::zero()).unwrap());
    }

    #[test]
    fn specialization_commutes_with_initial_forms(f in affine(3), a in rational(), w in weight(2)) {
        let lhs = f.specialize(2, &TropScalar::Fin(a.clone())).unwrap().initial_form(&w).unwrap();
        let mut wa = w.clone();
        wa.push(a);
        prop_assert_eq!(lhs, f.initial_form(&wa).unwrap().specialize(2, &TropScalar::zero()).unwrap());
    }

    #[test]
    fn convexification_keeps_the_function(f in poly(1, Ambient::Affine(1), 6), w in rational()) {
        let c = convexify(&f).unwrap();
        prop_assert_eq!(c.eval(&[w.clone()]).unwrap(), f.eval(&[w]).unwrap());
    }

    #[test]
    fn roots_are_the_breakpoints(f in poly(1, Ambient::Affine(1), 6)) {
        let fa = factor(&f).unwrap();
        // candidates: every pairwise tie point of two terms
        let terms: Vec<(i64, Q)> = f.terms().iter().map(|(u, c)| (u.0[0], c.clone())).collect();
        let mut ties = Vec::new();
        for (i, (a, ca)) in terms.iter().enumerate() {
            for (b, cb) in &terms[i + 1..] {
                ties.push((ca - cb) / q(b - a));
            }
        }
        for r in &fa.roots {
            prop_assert!(attained_twice(&f, &[r.w.clone()]), "root {} is not a breakpoint", r.w);
        }
        for t in &ties {
            let is_root = fa.roots.iter().any(|r| &r.w == t);
            prop_assert_eq!(attained_twice(&f, &[t.clone()]), is_root);
            // just off a tie the minimum is unique
            for s in [t + qf(1, 97), t - qf(1, 97)] {
                if !ties.contains(&s) {
                    prop_assert!(!attained_twice(&f, &[s]));
                }
            }
        }
        let top = f.terms().keys().map(|u| u.0[0]).max().unwrap();
        prop_assert_eq!(fa.degree_span() as i64 + fa.power_of_x, top);
        prop_assert_eq!(fa.expand(Ambient::Affine(1)), convexify(&f).unwrap());
    }

    #[test]
    fn hypersurface_membership_matches_evaluation(f in affine(2), ws in prop::collection::vec(weight(2), 8)) {
        prop_assume!(f.len() >= 2 && !f.is_monomial());
        let h = match hypersurface(&f) {
            Ok(h) => h,
            Err(_) => return Ok(()),
        };
        let c = h.complex();
        for (cell, _) in h.cells() {
            prop_assert!(attained_twice(&f, cell.relint_point()));
        }
        for v in c.cells_of_dim(0) {
            prop_assert!(attained_twice(&f, v.relint_point()));
        }
        for w in ws {
            prop_assert_eq!(c.contains_point(&w), attained_twice(&f, &w), "at {:?}", w);
        }
    }
}

/// Independent oracle: the row-space vector supported on `support`, by Gaussian elimination over ℚ.
fn rowspace_vector_on(rows: &[Vec<Q>], support: &[usize]) -> Option<Vec<Q>> {
    let n = rows[0].len();
    let k = rows.len();
    // unknown coefficients c ∈ ℚ^k with (cᵀA)_j = 0 off the support
    let mut eqs: Vec<Vec<Q>> = (0..n).filter(|j| !support.contains(j)).map(|j| (0..k).map(|i| rows[i][j].clone()).collect()).collect();
    let mut piv = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..eqs.len()).find(|&i| !eqs[i][col].is_zero()) else { continue };
        eqs.swap(r, p);
        let inv = Q::one() / &eqs[r][col];
        for x in eqs[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..eqs.len() {
            if i != r && !eqs[i][col].is_zero() {
                let f = eqs[i][col].clone();
                for j in 0..k {
                    let d = &f * &eqs[r][j];
                    eqs[i][j] -= d;
                }
            }
        }
        piv.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !piv.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    c[free[0]] = Q::one();
    for (row, &pc) in piv.iter().enumerate() {
        c[pc] = -eqs[row][free[0]].clone();
    }
    Some((0..n).map(|j| (0..k).map(|i| &c[i] * &rows[i][j]).sum()).collect())
}

fn two_adic(x: &Q) -> TropScalar {
    ValuedField::parse("p-adic:2").unwrap().val(&FieldElem::Rat(x.clone()))
}

fn matrix(k: usize, n: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec((-8i64..=8).prop_map(q), n), k)
}

fn realize(rows: &[Vec<Q>]) -> VMatroid {
    let n = rows[0].len();
    let m: Vec<Vec<FieldElem>> = rows.iter().map(|r| r.iter().cloned().map(FieldElem::Rat).collect()).collect();
    let ground = (0..n).map(|i| ExpVec::unit(n, i)).collect();
    VMatroid::from_rowspace(&m, ground, &ValuedField::parse("p-adic:2").unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realizable_matroids_satisfy_exchange(rows in matrix(2, 5)) {
        let m = realize(&rows);
        prop_assert!(m.check_exchange_axiom().unwrap().is_none());
    }

    #[test]
    fn fundamental_circuits_match_linear_algebra(rows in matrix(2, 5)) {
        let m = realize(&rows);
        let full = m.full_mask();
        for (b, _) in m.bases() {
            for e in bits(full & !b) {
                let c = m.fundamental_circuit(*b, e).unwrap();
                let mut support: Vec<usize> = bits(*b).collect();
                support.push(e);
                let v = rowspace_vector_on(&rows, &support).expect("unique vector on B ∪ e");
                let oracle = TropVector(v.iter().map(two_adic).collect()).normalized();
                prop_assert_eq!(c, oracle);
            }
        }
    }

    #[test]
    fn initial_matroids_keep_the_rank(rows in matrix(2, 5), w in weight(5)) {
        let m = realize(&rows);
        let i = m.initial_matroid(&w).unwrap();
        prop_assert_eq!(i.rank(), m.rank());
        prop_assert!(i.is_trivially_valued());
        prop_assert!(i.check_exchange_axiom().unwrap().is_none());
    }

    #[test]
    fn eliminations_are_vectors(rows in matrix(3, 6)) {
        let m = realize(&rows);
        let cs = m.circuits().unwrap();
        for (a, f) in cs.iter().enumerate() {
            for g in &cs[a + 1..] {
                for u in bits(f.support() & g.support()) {
                    let s = f.0[u].finite().unwrap() - g.0[u].finite().unwrap();
                    let g2 = g.shift(&s);
                    let h = m.eliminate(f, &g2, u).unwrap();
                    prop_assert!(satisfies_star(f, &g2, &h, u));
                    prop_assert!(m.is_vector(&h).unwrap());
                }
            }
        }
    }
}
