//! Exact dense linear algebra over the rationals and over rational functions.

use crate::exact::{RatFunc, Rational};
use num_traits::{One, Signed, Zero};

pub type QMatrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> QMatrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn matmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for (l, bl) in b.iter().enumerate() {
            let a_il = &a[i][l];
            if a_il.is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    out[i][j] += a_il * &bl[j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &QMatrix) -> QMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &QMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if consistent.
pub fn solve(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: QMatrix = m.iter().zip(b).map(|(r, bi)| {
        let mut row = r.clone();
        row.push(bi.clone());
        row
    }).collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Some(x)
}

/// Inertia `(positive, negative)` of a symmetric rational matrix, by
/// symmetric Gaussian elimination. `None` if the matrix is singular.
pub fn symmetric_signature(m: &mut QMatrix) -> Option<(usize, usize)> {
    let n = m.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if m[k][k].is_zero() {
            if let Some(j) = ((k + 1)..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else {
                let j = ((k + 1)..n).find(|&j| !m[k][j].is_zero())?;
                // e_k + e_j has nonzero norm 2 m_kj when both diagonals vanish.
                for i in 0..n {
                    let v = m[j][i].clone();
                    m[k][i] += v;
                }
                for i in 0..n {
                    let v = m[i][j].clone();
                    m[i][k] += v;
                }
            }
        }
        let p = m[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
        for i in (k + 1)..n {
            m[k][i] = Rational::zero();
            m[i][k] = Rational::zero();
        }
        k += 1;
    }
    Some((pos, neg))
}

/// Rank of a matrix over the field of rational functions.
pub fn rank_ratfunc(rows: &[Vec<RatFunc>]) -> usize {
    let mut m: Vec<Vec<RatFunc>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        let pivot_row: Vec<RatFunc> = m[r].iter().map(|x| (x * &inv).normalize()).collect();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *x = (&*x - &(&f * pv)).normalize();
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(matmul(&m, &transpose(&vec![v])).iter().all(|r| r[0].is_zero()));
        }
    }

    #[test]
    fn solve_and_inconsistent() {
        let m = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve(&m, &[int(2), int(0)]).unwrap(), vec![int(1), int(1)]);
        let s = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(&s, &[int(1), int(3)]).is_none());
    }

    #[test]
    fn split_signature() {
        let mut m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(symmetric_signature(&mut m), Some((1, 1)));
        let mut d = vec![vec![rat(1, 2), int(0)], vec![int(0), int(3)]];
        assert_eq!(symmetric_signature(&mut d), Some((2, 0)));
    }

    #[test]
    fn ratfunc_rank() {
        let x = RatFunc::var(1, 0);
        let one = RatFunc::one(1);
        let rows = vec![vec![x.clone(), one.clone()], vec![&x * &x, x.clone()]];
        assert_eq!(rank_ratfunc(&rows), 1);
    }
}
