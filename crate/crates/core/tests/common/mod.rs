//! Desk-scale corpus shared by the integration targets.
#![allow(dead_code)]

use tropical_core::classical::ClassicalPoly;
use tropical_core::field::ValuedField;
use tropical_core::ideal::IdealTruncation;
use tropical_core::parse::{parse_classical, parse_trop};
use tropical_core::poly::{Ambient, TropPoly};

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn classical(vars: &[&str], field: &ValuedField, gens: &[&str]) -> Vec<ClassicalPoly> {
    let n = names(vars);
    let par = if field.has_parameter() { Some("t") } else { None };
    gens.iter().map(|s| parse_classical(s, &n, par).unwrap()).collect()
}

pub fn realizable(vars: &[&str], amb: Ambient, field: &str, gens: &[&str], d: usize) -> IdealTruncation {
    let field = ValuedField::parse(field).unwrap();
    let g = classical(vars, &field, gens);
    IdealTruncation::tropicalize(&names(vars), amb, field, &g, d).unwrap()
}

pub fn trop(src: &str, vars: &[&str], amb: Ambient) -> TropPoly {
    parse_trop(src, &names(vars), amb).unwrap()
}

/// Conic xy + xz + yz + 2z² over ℚ with the 2-adic valuation; y is the homogenizing coordinate,
/// so the chart coordinates are (w_x, w_z).
pub fn conic_2adic(d: usize) -> IdealTruncation {
    realizable(&["y", "x", "z"], Ambient::Projective(3), "p-adic:2", &["x*y + x*z + y*z + 2*z^2"], d)
}

/// The same conic over ℚ(t) with t in place of 2.
pub fn conic_t(d: usize) -> IdealTruncation {
    realizable(&["y", "x", "z"], Ambient::Projective(3), "t-adic", &["x*y + x*z + y*z + t*z^2"], d)
}

pub fn conic_trop() -> TropPoly {
    trop("min(x + y, x + z, y + z, 1 + 2z)", &["y", "x", "z"], Ambient::Projective(3))
}

pub fn point_ideal(d: usize) -> IdealTruncation {
    realizable(&["x0", "x1", "x2"], Ambient::Projective(3), "trivial", &["x1 - x0", "x2 - x0"], d)
}

pub fn cubic(d: usize) -> IdealTruncation {
    realizable(&["x"], Ambient::Affine(1), "p-adic:2", &["x^3 + 2*x^2 + x + 2"], d)
}

pub fn two_roots_t(d: usize) -> IdealTruncation {
    realizable(&["x"], Ambient::Affine(1), "t-adic", &["(x - 1)*(x - t)"], d)
}

pub fn two_lines(d: usize) -> IdealTruncation {
    realizable(&["x", "y"], Ambient::Affine(2), "p-adic:2", &["x + y + 1", "x + 2*y + 4"], d)
}

pub fn line(d: usize) -> IdealTruncation {
    realizable(&["x", "y"], Ambient::Affine(2), "trivial", &["x + y + 1"], d)
}

pub fn doubled_line(d: usize) -> IdealTruncation {
    realizable(&["x", "y"], Ambient::Affine(2), "trivial", &["x^2 + y^2 + 1"], d)
}

pub fn example_35(d: usize) -> IdealTruncation {
    realizable(&["x1", "x2", "x3"], Ambient::Affine(3), "trivial", &["x1 - 1", "x2 - x3"], d)
}

/// Every tropicalized truncation used by the property suites, with its expected dimension.
pub fn corpus() -> Vec<(&'static str, IdealTruncation, i64)> {
    vec![
        ("point ideal", point_ideal(3), 0),
        ("2-adic conic", conic_2adic(3), 1),
        ("t-adic conic", conic_t(3), 1),
        ("2-adic cubic", cubic(4), 0),
        ("(x-1)(x-t)", two_roots_t(4), 0),
        ("two 2-adic lines", two_lines(3), 0),
        ("line x+y+1", line(3), 1),
        ("x^2+y^2+1", doubled_line(3), 1),
        ("x1-1, x2-x3", example_35(3), 1),
    ]
}

/// x + y + 1 over ℚ(t): the same tropical line, with every rational value in the value group.
pub fn line_t(d: usize) -> IdealTruncation {
    realizable(&["x", "y"], Ambient::Affine(2), "t-adic", &["x + y + 1"], d)
}

pub fn doubled_line_t(d: usize) -> IdealTruncation {
    realizable(&["x", "y"], Ambient::Affine(2), "t-adic", &["x^2 + y^2 + 1"], d)
}
