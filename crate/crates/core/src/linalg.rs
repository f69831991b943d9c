//! Exact Gaussian elimination over a [`Scalar`] field.
//!
//! Matrices are row-major `Vec<Vec<T>>`; every row has the same length.

use crate::scalar::Scalar;

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped)
/// and the pivot column of each.
pub fn rref<T: Scalar>(rows: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let d = m[r][j].clone() * &f;
                    m[i][j] = m[i][j].clone() - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}` for an `m x n` matrix `A`.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (red, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b` (free variables set to zero), or `None` when
/// the system is inconsistent.
pub fn solve<T: Scalar>(rows: &[Vec<T>], rhs: &[T]) -> Option<Vec<T>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let aug: Vec<Vec<T>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix.
pub fn det<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut acc = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc = acc * &m[c][c];
        let inv = T::one() / &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * &inv;
            for j in c..n {
                let d = m[c][j].clone() * &f;
                m[i][j] = m[i][j].clone() - &d;
            }
        }
    }
    acc
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + &(x.clone() * y))
}
