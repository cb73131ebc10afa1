//! Invariants of ideal truncations and their varieties, swept over the desk corpus.

mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical_core::complex::{groebner_complex, same_support, weighted_equal};
use tropical_core::matroid::check_monomial_elimination;
use tropical_core::multiplicity::variety;
use tropical_core::scalar::{abs_q, q, qf, TropScalar, Q};

fn rational() -> impl Strategy<Value = Q> {
    (-8i64..=8, 1i64..=3).prop_map(|(n, d)| qf(n, d))
}

#[test]
fn stored_parts_satisfy_monomial_elimination() {
    for (name, i, _) in corpus() {
        for (d, m) in i.parts().iter().enumerate().filter(|(_, m)| m.len() <= 15) {
            let c = m.circuits().unwrap();
            assert!(check_monomial_elimination(&c).unwrap().is_none(), "{name}, degree {d}");
        }
    }
}

#[test]
fn saturated_ideals_are_fixed_by_saturation() {
    for (name, i, _) in corpus() {
        let s = i.torus_saturation().unwrap();
        let k = s.degree_bound().min(i.degree_bound());
        assert_eq!(&s.parts()[..=k], &i.parts()[..=k], "{name}");
    }
}

#[test]
fn explicit_and_realizable_hilbert_data_agree() {
    for (name, i, _) in corpus() {
        let e = i.to_explicit();
        assert_eq!(e.hilbert_values(), i.hilbert_values(), "{name}");
        assert_eq!(e.dimension().unwrap(), i.dimension().unwrap(), "{name}");
    }
}

#[test]
fn specialization_commutes_with_initial_ideals_per_degree() {
    // conic over ℚ(t), affine chart (w_x, w_z); specialize x = a, weight w on z
    let conic = conic_t(4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in [q(1), q(-1), qf(1, 2)] {
        let s = conic.specialize(1, &TropScalar::Fin(a.clone()), &mut rng).unwrap();
        for w in [q(0), q(2), qf(-1, 3)] {
            // both sides torus-saturated: the explicit route saturates by x_0 as it specializes
            let lhs = s.initial_ideal(&[w.clone()]).unwrap().to_explicit().torus_saturation().unwrap();
            let rhs = conic
                .initial_ideal(&[a.clone(), w.clone()])
                .unwrap()
                .specialize(1, &TropScalar::zero(), &mut rng)
                .unwrap()
                .torus_saturation()
                .unwrap();
            let k = rhs.degree_bound().min(lhs.degree_bound());
            for d in 0..=k {
                assert_eq!(lhs.part(d).unwrap(), rhs.part(d).unwrap(), "a = {a}, w = {w}, degree {d}");
            }
        }
    }
}

#[test]
fn specialization_commutes_with_trivialization_per_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (i, var) in [(conic_t(4), 1usize), (line_t(3), 1), (doubled_line_t(4), 0)] {
        for a in [q(0), q(1), q(-2)] {
            let lhs = i.specialize(var, &TropScalar::Fin(a.clone()), &mut rng).unwrap().trivialize();
            let rhs = i.trivialize().specialize(var, &TropScalar::zero(), &mut rng).unwrap();
            for d in 0..=rhs.degree_bound().min(lhs.degree_bound()) {
                assert_eq!(lhs.part(d).unwrap(), rhs.part(d).unwrap(), "a = {a}, degree {d}");
            }
        }
    }
}

#[test]
fn recession_fans_of_gröbner_complexes_are_trivialized_fans() {
    for i in [conic_2adic(3), two_lines(3), conic_t(3)] {
        let g = groebner_complex(&i, 2).unwrap();
        let t = groebner_complex(&i.trivialize(), 2).unwrap();
        assert_eq!(g.recession_fan().unwrap(), t);
    }
}

#[test]
fn recession_fan_of_the_variety_has_the_trivialized_support() {
    for i in [conic_2adic(3), conic_t(3), line(2), doubled_line(2)] {
        let v = variety(&i, 2).unwrap().support;
        let t = variety(&i.trivialize(), 2).unwrap().support;
        assert!(same_support(&v.recession_fan().unwrap(), &t));
    }
}

#[test]
fn boolean_curves_are_balanced_fans() {
    for i in [conic_2adic(3).trivialize(), conic_t(3).trivialize(), line(2), doubled_line(2)] {
        let v = variety(&i, 2).unwrap();
        let w = v.weighted.expect("weights");
        assert!(w.cells().iter().all(|(c, _)| c.contains(&vec![q(0); c.ambient_dim()])), "not a fan");
        assert!(w.is_balanced().unwrap());
    }
}

fn conic_variety() -> tropical_core::complex::WeightedComplex {
    variety(&conic_2adic(3), 2).unwrap().weighted.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stars_are_varieties_of_initial_ideals(x in rational(), z in rational(), snap in 0usize..3) {
        // snap the sample onto the vertex, onto an edge, or leave it generic
        let w = match snap {
            0 => vec![x.clone(), z],
            1 => vec![q(0), -abs_q(&x) / q(4)],
            _ => vec![abs_q(&x) / q(4), abs_q(&x) / q(4)],
        };
        let conic = conic_2adic(3);
        let star = conic_variety().star(&w);
        let vi = variety(&conic.initial_ideal(&w).unwrap(), 2).unwrap().weighted.unwrap();
        prop_assert!(weighted_equal(&star, &vi), "at {:?}", w);
    }

    #[test]
    fn stable_intersection_weight_is_stable(a in rational()) {
        let v = variety(&conic_t(3), 2).unwrap().weighted.unwrap();
        prop_assert_eq!(v.stable_intersect_hyperplane(0, &a).unwrap().total_weight(), 2);
        // z = α leaves a linear equation in x in the chart y = 1
        prop_assert_eq!(v.stable_intersect_hyperplane(1, &a).unwrap().total_weight(), 1);
        let d = variety(&doubled_line(2), 2).unwrap().weighted.unwrap();
        prop_assert_eq!(d.stable_intersect_hyperplane(0, &a).unwrap().total_weight(), 2);
    }
}

#[test]
fn stable_intersection_matches_specialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // (ideal, specialized input variable, chart coordinate)
    let cases = [(conic_t(4), 1usize, 0usize), (line_t(3), 0, 0), (doubled_line_t(4), 1, 1)];
    for (i, var, coord) in cases {
        let v = variety(&i, 2).unwrap().weighted.unwrap();
        for a in [q(0), q(1), qf(-1, 2), q(3)] {
            let st = v.stable_intersect_hyperplane(coord, &a).unwrap();
            let s = i.specialize(var, &TropScalar::Fin(a.clone()), &mut rng).unwrap();
            let sv = variety(&s, 2).unwrap().weighted.unwrap();
            assert!(weighted_equal(&st, &sv), "coordinate {coord} at {a}");
        }
    }
}
