//! Univariate tropical polynomials: convexification, factorization and root multiplicities.

use crate::error::{Error, Result};
use crate::poly::{Ambient, ExpVec, TropPoly};
use crate::scalar::{fmt_q, q, Q};
use num_traits::Zero;

/// Vertices of the lower convex hull of points sorted by strictly increasing abscissa.
/// Collinear interior points are dropped.
pub fn lower_hull(points: &[(i64, Q)]) -> Vec<(i64, Q)> {
    let mut hull: Vec<(i64, Q)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b unless it lies strictly below the segment a–p
            let lhs = (&b.1 - &a.1) * q(p.0 - a.0);
            let rhs = (&p.1 - &a.1) * q(b.0 - a.0);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    hull
}

fn points_of(f: &TropPoly) -> Result<Vec<(i64, Q)>> {
    if f.nvars() != 1 {
        return Err(Error::Invalid(format!("expected a univariate polynomial, got {} variables", f.nvars())));
    }
    if f.is_infinity() {
        return Err(Error::InfinityPolynomial);
    }
    Ok(f.terms().iter().map(|(u, c)| (u.0[0], c.clone())).collect())
}

/// α ⊙ x^k ⊙ ∏ (x ⊕ w_i)^{m_i}, roots strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct UniFactorization {
    #[serde(with = "crate::scalar::q_string")]
    pub unit: Q,
    pub roots: Vec<Root>,
    pub power_of_x: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Root {
    #[serde(with = "crate::scalar::q_string")]
    pub w: Q,
    pub mult: u64,
}

impl UniFactorization {
    pub fn degree_span(&self) -> u64 {
        self.roots.iter().map(|r| r.mult).sum()
    }

    pub fn expand(&self, ambient: Ambient) -> TropPoly {
        let mut p = TropPoly::monomial(ambient, ExpVec(vec![self.power_of_x]), self.unit.clone());
        for r in &self.roots {
            let lin = TropPoly::from_terms(ambient, vec![(ExpVec(vec![1]), Q::zero()), (ExpVec(vec![0]), r.w.clone())])
                .expect("univariate");
            p = p.mul(&lin.pow(r.mult as u32)).expect("same ambient");
        }
        p
    }

    pub fn mult_at(&self, w: &Q) -> u64 {
        self.roots.iter().find(|r| &r.w == w).map_or(0, |r| r.mult)
    }

    pub fn display(&self, var: &str) -> String {
        let mut parts = Vec::new();
        if !self.unit.is_zero() {
            parts.push(fmt_q(&self.unit));
        }
        match self.power_of_x {
            0 => {}
            1 => parts.push(var.to_string()),
            k => parts.push(format!("{var}^{k}")),
        }
        for r in &self.roots {
            let lin = format!("({var} ⊕ {})", fmt_q(&r.w));
            parts.push(if r.mult == 1 { lin } else { format!("{lin}^{}", r.mult) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊙ ")
        }
    }
}

/// The coefficientwise-minimal polynomial with the same function: hull heights at every exponent.
pub fn convexify(f: &TropPoly) -> Result<TropPoly> {
    let pts = points_of(f)?;
    let hull = lower_hull(&pts);
    let mut terms = Vec::new();
    for seg in hull.windows(2) {
        let ((i0, c0), (i1, c1)) = (&seg[0], &seg[1]);
        let slope = (c1 - c0) / q(i1 - i0);
        for i in *i0..*i1 {
            terms.push((ExpVec(vec![i]), c0 + &slope * q(i - i0)));
        }
    }
    let last = hull.last().unwrap();
    terms.push((ExpVec(vec![last.0]), last.1.clone()));
    TropPoly::from_terms(f.ambient(), terms)
}

/// Roots are minus the slopes of the lower hull of (i, c_i); multiplicities are segment widths.
pub fn factor(f: &TropPoly) -> Result<UniFactorization> {
    let pts = points_of(f)?;
    let hull = lower_hull(&pts);
    let mut roots: Vec<Root> = hull
        .windows(2)
        .map(|seg| {
            let ((i0, c0), (i1, c1)) = (&seg[0], &seg[1]);
            Root { w: -(c1 - c0) / q(i1 - i0), mult: (i1 - i0) as u64 }
        })
        .collect();
    roots.reverse();
    let (top, unit) = hull.last().unwrap().clone();
    let power_of_x = hull[0].0;
    debug_assert_eq!(top - power_of_x, roots.iter().map(|r| r.mult as i64).sum::<i64>());
    Ok(UniFactorization { unit, roots, power_of_x })
}

pub fn mult_at(f: &TropPoly, w: &Q) -> Result<u64> {
    Ok(factor(f)?.mult_at(w))
}

/// Whether the root multiset (and the x-shift) of f is contained in that of g.
pub fn divides(f: &TropPoly, g: &TropPoly) -> Result<bool> {
    let (a, b) = (factor(f)?, factor(g)?);
    Ok(a.power_of_x <= b.power_of_x && a.roots.iter().all(|r| b.mult_at(&r.w) >= r.mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_trop;

    fn p(s: &str) -> TropPoly {
        parse_trop(s, &["x".to_string()], Ambient::Affine(1)).unwrap()
    }

    #[test]
    fn cubic_factorization() {
        let f = p("x^3 ⊕ 1⊙x^2 ⊕ x ⊕ 1");
        assert_eq!(convexify(&f).unwrap(), p("x^3 ⊕ x^2 ⊕ x ⊕ 1"));
        let fa = factor(&f).unwrap();
        assert_eq!(fa.roots, vec![Root { w: q(0), mult: 2 }, Root { w: q(1), mult: 1 }]);
        assert_eq!(fa.unit, q(0));
        assert_eq!(fa.power_of_x, 0);
        assert_eq!(fa.expand(Ambient::Affine(1)), convexify(&f).unwrap());
        assert_eq!(fa.display("x"), "(x ⊕ 0)^2 ⊙ (x ⊕ 1)");
    }

    #[test]
    fn hull_drops_high_middle_coefficient() {
        assert_eq!(convexify(&p("x^2 ⊕ 5⊙x ⊕ 0")).unwrap(), p("x^2 ⊕ x ⊕ 0"));
        let fa = factor(&p("x^2 ⊕ x ⊕ 0")).unwrap();
        assert_eq!(fa.roots, vec![Root { w: q(0), mult: 2 }]);
    }

    #[test]
    fn multiplicities_and_division() {
        let f = p("x^3 ⊕ 1⊙x^2 ⊕ x ⊕ 1");
        assert_eq!(mult_at(&f, &q(0)).unwrap(), 2);
        assert_eq!(mult_at(&f, &q(1)).unwrap(), 1);
        assert_eq!(mult_at(&p("x ⊕ 0"), &q(7)).unwrap(), 0);
        assert!(divides(&p("x ⊕ 0"), &f).unwrap());
        assert!(!divides(&p("x ⊕ 2"), &p("(x ⊕ 0)^2")).unwrap());
        assert!(!divides(&p("(x ⊕ 0)^3"), &p("x^3 ⊕ x^2 ⊕ x ⊕ 1")).unwrap());
    }

    #[test]
    fn laurent_shift() {
        let f = parse_trop("-x ⊕ 2 ⊕ x", &["x".to_string()], Ambient::Laurent(1)).unwrap();
        let fa = factor(&f).unwrap();
        assert_eq!(fa.power_of_x, -1);
        assert_eq!(fa.roots, vec![Root { w: q(0), mult: 2 }]);
        assert_eq!(fa.expand(Ambient::Laurent(1)), convexify(&f).unwrap());
    }
}
