//! Exact linear programming over ℚ: dense two-phase simplex with Bland's rule.

use crate::scalar::Q;
use num_traits::{One, Signed, Zero};

/// a·x ≤ b or a·x = b.
pub type Constraint = (Vec<Q>, Q);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

struct Tableau {
    /// rows × (cols + 1); the last column is the right-hand side.
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.t[r][c];
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes obj·z over the current basis, restricted to columns `allowed`.
    /// Returns false when unbounded.
    fn optimize(&mut self, obj: &[Q], allowed: usize) -> bool {
        loop {
            // reduced cost of column j: obj_j − Σ_r obj_{basis r} t[r][j]
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = obj[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.t[r][j].is_zero() {
                        rc -= &obj[b] * &self.t[r][j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(Q, usize, usize)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][c];
                if a.is_positive() {
                    let ratio = &self.t[r][self.cols] / a;
                    let better = match &best {
                        None => true,
                        Some((br, _, bb)) => ratio < *br || (ratio == *br && self.basis[r] < *bb),
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            let Some((_, r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Maximizes c·x subject to the inequalities and equalities; x is free.
pub fn maximize(c: &[Q], ineqs: &[Constraint], eqs: &[Constraint]) -> LpResult {
    let n = c.len();
    let m_in = ineqs.len();
    let m = m_in + eqs.len();
    // columns: x⁺ (n), x⁻ (n), slacks (m_in), artificials (m)
    let cols = 2 * n + m_in + m;
    let mut t = Vec::with_capacity(m);
    for (i, (a, b)) in ineqs.iter().chain(eqs).enumerate() {
        let mut row = vec![Q::zero(); cols + 1];
        for j in 0..n {
            row[j] = a[j].clone();
            row[n + j] = -&a[j];
        }
        if i < m_in {
            row[2 * n + i] = Q::one();
        }
        row[cols] = b.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        row[2 * n + m_in + i] = Q::one();
        t.push(row);
    }
    let mut tab = Tableau { t, basis: (0..m).map(|i| 2 * n + m_in + i).collect(), cols };
    let mut phase1 = vec![Q::zero(); cols];
    for j in 2 * n + m_in..cols {
        phase1[j] = -Q::one();
    }
    tab.optimize(&phase1, cols);
    let infeas: Q = tab.basis.iter().enumerate().filter(|(_, &b)| b >= 2 * n + m_in).map(|(r, _)| tab.t[r][cols].clone()).sum();
    if infeas.is_positive() {
        return LpResult::Infeasible;
    }
    // drive remaining (zero-valued) artificials out of the basis
    let real = 2 * n + m_in;
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= real {
            if let Some(c) = (0..real).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, c);
            } else {
                tab.t.remove(r);
                tab.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    let mut obj = vec![Q::zero(); cols];
    for j in 0..n {
        obj[j] = c[j].clone();
        obj[n + j] = -&c[j];
    }
    if !tab.optimize(&obj, real) {
        return LpResult::Unbounded;
    }
    let mut z = vec![Q::zero(); cols];
    for (r, &b) in tab.basis.iter().enumerate() {
        z[b] = tab.t[r][cols].clone();
    }
    let x: Vec<Q> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    LpResult::Optimal { x, value }
}

pub fn feasible_point(n: usize, ineqs: &[Constraint], eqs: &[Constraint]) -> Option<Vec<Q>> {
    match maximize(&vec![Q::zero(); n], ineqs, eqs) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn c(a: &[i64], b: i64) -> Constraint {
        (a.iter().map(|&x| q(x)).collect(), q(b))
    }

    #[test]
    fn triangle_optimum() {
        // x, y ≥ 0, x + y ≤ 2: max x + 2y = 4 at (0, 2)
        let ineqs = vec![c(&[-1, 0], 0), c(&[0, -1], 0), c(&[1, 1], 2)];
        assert_eq!(maximize(&[q(1), q(2)], &ineqs, &[]), LpResult::Optimal { x: vec![q(0), q(2)], value: q(4) });
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&[q(1)], &[c(&[1], 0), c(&[-1], -1)], &[]), LpResult::Infeasible);
        assert_eq!(maximize(&[q(1), q(0)], &[c(&[0, 1], 3)], &[]), LpResult::Unbounded);
    }

    #[test]
    fn equalities_and_fractions() {
        // 2x = 1, x + y ≤ 1: max y = 1/2
        let r = maximize(&[q(0), q(1)], &[c(&[1, 1], 1)], &[c(&[2, 0], 1)]);
        assert_eq!(r, LpResult::Optimal { x: vec![qf(1, 2), qf(1, 2)], value: qf(1, 2) });
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // many constraints tight at the origin
        let ineqs = vec![c(&[1, 1], 0), c(&[1, 2], 0), c(&[2, 1], 0), c(&[-1, 0], 1), c(&[0, -1], 1)];
        let r = maximize(&[q(-1), q(-1)], &ineqs, &[]);
        assert_eq!(r, LpResult::Optimal { x: vec![q(-1), q(-1)], value: q(2) });
    }
}
