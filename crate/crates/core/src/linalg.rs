//! Dense exact linear algebra over ℚ and ℚ(t).

use crate::field::FieldElem;
use crate::scalar::Q;
use num_traits::{One, Zero};

pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FieldElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FieldElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FieldElem::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        FieldElem::div(self, o).expect("nonzero divisor")
    }
    fn neg(&self) -> Self {
        FieldElem::neg(self)
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form in place; zero rows are removed. Returns the pivot columns.
pub fn rref<F: Scalar>(m: &mut Matrix<F>) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = F::one().div(&m[row][col]);
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    if !m[row][c].is_zero() {
                        let t = m[row][c].mul(&f);
                        m[r][c] = m[r][c].sub(&t);
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn det<F: Scalar>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut d = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return F::zero() };
        if p != col {
            a.swap(p, col);
            d = d.neg();
        }
        d = d.mul(&a[col][col]);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].div(&a[col][col]);
            for c in col..n {
                if !a[col][c].is_zero() {
                    let t = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
    }
    d
}

/// Inverse of a square matrix, or None when singular.
pub fn inverse<F: Scalar>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut a: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut a);
    if n > 0 && (piv.len() < n || piv[n - 1] >= n) {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right kernel {x : m·x = 0}, one vector per free column.
pub fn kernel<F: Scalar>(m: &Matrix<F>, ncols: usize) -> Matrix<F> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        out.push(v);
    }
    out
}

/// Basis of {v ∈ rowspace(rows) : v_j = 0 for every j with !keep[j]}.
pub fn subspace_supported_on<F: Scalar>(rows: &Matrix<F>, keep: &[bool]) -> Matrix<F> {
    let mut r = rows.clone();
    rref(&mut r);
    if r.is_empty() {
        return r;
    }
    let k = r.len();
    let constraints: Matrix<F> =
        (0..keep.len()).filter(|&j| !keep[j]).map(|j| (0..k).map(|i| r[i][j].clone()).collect()).collect();
    let coeffs = if constraints.is_empty() {
        (0..k).map(|i| (0..k).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
    } else {
        kernel(&constraints, k)
    };
    let mut out: Matrix<F> = coeffs
        .iter()
        .map(|c| {
            (0..keep.len())
                .map(|j| {
                    let mut s = F::zero();
                    for i in 0..k {
                        if !c[i].is_zero() && !r[i][j].is_zero() {
                            s = s.add(&c[i].mul(&r[i][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    rref(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rref_and_rank() {
        let mut a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let piv = rref(&mut a);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(a.len(), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&m(&[&[1, 2], &[1, 0]])), q(-2));
        assert_eq!(det(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]])), q(-3));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), q(0));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let ker = kernel(&a, 3);
        assert_eq!(ker.len(), 1);
        for row in &a {
            let s: Q = row.iter().zip(&ker[0]).map(|(x, y)| x * y).sum();
            assert_eq!(s, q(0));
        }
    }

    #[test]
    fn coordinate_subspace() {
        // span{(1,-1,0), (0,1,-1)} ∩ {v_1 = 0} = span{(1,0,-1)}
        let a = m(&[&[1, -1, 0], &[0, 1, -1]]);
        let s = subspace_supported_on(&a, &[true, false, true]);
        assert_eq!(s, m(&[&[1, 0, -1]]));
    }
}
