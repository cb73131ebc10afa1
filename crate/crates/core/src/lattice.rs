//! Integer linear algebra: extended gcd, saturated lattice bases, unimodular completion,
//! primitive vectors and lattice indices.

use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::scalar::{primitive_integer, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IVec = Vec<BigInt>;

/// (g, x, y) with g = gcd(a, b) ≥ 0 and a·x + b·y = g.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Coefficients c with Σ c_i a_i = gcd(a) ≥ 0.
pub fn ext_gcd_vec(a: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut c: Vec<BigInt> = vec![BigInt::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        let (ng, s, t) = ext_gcd(&g, x);
        for ci in c.iter_mut().take(i) {
            *ci *= &s;
        }
        c[i] = t;
        g = ng;
    }
    (g, c)
}

/// v scaled to a coprime integer vector with the same direction.
pub fn primitive(v: &[Q]) -> Result<IVec> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::Invalid("the zero vector has no primitive multiple".into()));
    }
    Ok(primitive_integer(v))
}

fn to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

/// Column-style reduction of an integer matrix m (rows × n): returns (h, w) where h = m·E is
/// lower echelon with trailing zero columns and w = E⁻¹, both exact and unimodular-related.
fn column_reduce(m: &[IVec], n: usize) -> (Vec<IVec>, Vec<IVec>, usize) {
    let mut h: Vec<IVec> = m.to_vec();
    let mut w: Vec<IVec> = (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut col = 0;
    for r in 0..h.len() {
        if col == n {
            break;
        }
        // gcd-reduce entries h[r][col..] into column col
        loop {
            let nz: Vec<usize> = (col..n).filter(|&j| !h[r][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| h[r][j].abs()).unwrap();
            if p != col {
                for row in h.iter_mut() {
                    row.swap(p, col);
                }
                w.swap(p, col);
            }
            let mut done = true;
            for j in col + 1..n {
                if h[r][j].is_zero() {
                    continue;
                }
                let k = h[r][j].div_floor(&h[r][col]);
                // col_j -= k·col_col  ⇒  row_col of w += k·row_j
                for row in h.iter_mut() {
                    let t = &row[col] * &k;
                    row[j] -= t;
                }
                let wj = w[j].clone();
                for (x, y) in w[col].iter_mut().zip(&wj) {
                    *x += &k * y;
                }
                if !h[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[r][col].is_zero() {
            if h[r][col].is_negative() {
                for row in h.iter_mut() {
                    row[col] = -&row[col];
                }
                for x in w[col].iter_mut() {
                    *x = -&*x;
                }
            }
            col += 1;
        }
    }
    (h, w, col)
}

/// Integer basis of {x ∈ ℤⁿ : m·x = 0}, which is saturated.
pub fn integer_kernel(m: &[IVec], n: usize) -> Vec<IVec> {
    if m.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    }
    let (_, w, rank) = column_reduce(m, n);
    // m·E = [H | 0]; kernel = last n − rank columns of E = E·e_j. E is the inverse of w.
    let e = inverse_unimodular(&w);
    (rank..n).map(|j| (0..n).map(|i| e[i][j].clone()).collect()).collect()
}

fn inverse_unimodular(w: &[IVec]) -> Vec<IVec> {
    let n = w.len();
    let mut a: Vec<Vec<Q>> = w.iter().map(|r| to_q(r)).collect();
    for (i, r) in a.iter_mut().enumerate() {
        r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
    }
    crate::linalg::rref(&mut a);
    a.iter().map(|r| r[n..].iter().map(|x| x.to_integer()).collect()).collect()
}

/// Basis of V ∩ ℤⁿ for the rational subspace V spanned by `span`.
pub fn saturated_basis(span: &[Vec<Q>], n: usize) -> Vec<IVec> {
    let normals = kernel(&span.to_vec(), n);
    let normals: Vec<IVec> = normals.iter().map(|v| primitive_integer(v)).collect();
    integer_kernel(&normals, n)
}

/// A unimodular n×n matrix whose first rows are the given saturated basis.
pub fn complete_to_unimodular(basis: &[IVec], n: usize) -> Result<Vec<IVec>> {
    if basis.is_empty() {
        return Ok((0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect());
    }
    // the rows of basis are the columns of a matrix b; reduce bᵀ by column operations on the ambient
    let (h, w, rank) = column_reduce(basis, n);
    if rank != basis.len() {
        return Err(Error::Invalid("basis vectors are linearly dependent".into()));
    }
    // basis = [L | 0]·w with L lower triangular; saturation means |det L| = 1
    let det: BigInt = (0..rank).map(|i| h[i][i].clone()).product();
    if det.abs() != BigInt::one() {
        return Err(Error::Invalid("basis does not span a saturated lattice".into()));
    }
    let mut out: Vec<IVec> = basis.to_vec();
    out.extend(w[rank..].iter().cloned());
    Ok(out)
}

/// Index of the lattice generated by `gens` inside its saturation (gcd of maximal minors).
pub fn lattice_index(gens: &[IVec]) -> Result<BigInt> {
    let n = gens.first().map_or(0, |g| g.len());
    let (h, _, rank) = column_reduce(gens, n);
    if rank == 0 {
        return Err(Error::Invalid("lattice index of the zero lattice".into()));
    }
    // in column-echelon form the row lattice is spanned by the first `rank` columns; the gcd
    // of the maximal minors of that column block does not depend on the row choice
    let rows: Vec<Vec<Q>> = h.iter().map(|r| to_q(&r[..rank])).collect();
    let mut g = BigInt::zero();
    let m = rows.len();
    let mut pick: Vec<usize> = (0..rank).collect();
    loop {
        let sub: Vec<Vec<Q>> = pick.iter().map(|&i| rows[i].clone()).collect();
        let d = crate::linalg::det(&sub).to_integer();
        g = g.gcd(&d);
        if !crate::matroid::next_combination(&mut pick, m) {
            break;
        }
    }
    Ok(g)
}

/// Generator of (span τ ∩ ℤⁿ)/(span σ ∩ ℤⁿ) on the side of `v`, where span σ ⊂ span τ has
/// codimension one and v ∈ span τ ∖ span σ.
pub fn quotient_generator(span_tau: &[Vec<Q>], span_sigma: &[Vec<Q>], v: &[Q]) -> Result<IVec> {
    let n = v.len();
    let lt = saturated_basis(span_tau, n);
    let perp = kernel(&span_sigma.to_vec(), n);
    let mut phi = vec![Q::zero(); n];
    for k in &perp {
        let c: Q = k.iter().zip(v).map(|(a, b)| a * b).sum();
        for (p, x) in phi.iter_mut().zip(k) {
            *p += &c * x;
        }
    }
    let vals: Vec<Q> = lt.iter().map(|b| b.iter().zip(&phi).map(|(x, p)| Q::from_integer(x.clone()) * p).sum()).collect();
    if vals.iter().all(|x| x.is_zero()) {
        return Err(Error::Invalid("direction lies in the smaller span".into()));
    }
    let den = crate::scalar::common_denominator(vals.iter());
    let ints: Vec<BigInt> = vals.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let (_, c) = ext_gcd_vec(&ints);
    let mut u = vec![BigInt::zero(); n];
    for (ci, b) in c.iter().zip(&lt) {
        for (x, y) in u.iter_mut().zip(b) {
            *x += ci * y;
        }
    }
    let side: Q = u.iter().zip(&phi).map(|(x, p)| Q::from_integer(x.clone()) * p).sum();
    if side.is_negative() {
        for x in u.iter_mut() {
            *x = -&*x;
        }
    }
    Ok(u)
}
