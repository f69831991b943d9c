//! Integer lattice helpers: primitivity, determinants, Hermite normal form
//! and integer kernels. Entries are `i64`; intermediate work is `i128`.

use num_integer::Integer as _;

use crate::{Integer, Rational};

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn is_primitive(v: &[i64]) -> bool {
    gcd_all(v) == 1
}

/// Divide by the gcd of the entries; zero stays zero.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Scale a rational vector to a primitive integer vector with the same
/// direction.
pub fn clear_denominators(v: &[Rational]) -> Vec<i64> {
    let l = v
        .iter()
        .fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Integer> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(Integer::from(0), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g == Integer::from(0) { x.clone() } else { x / &g };
            i64::try_from(y).expect("lattice vector overflows i64")
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Row-style Hermite normal form of a full-rank square integer matrix:
/// upper triangular, positive diagonal, entries above each pivot reduced
/// into `[0, pivot)`. The rows span the same lattice.
pub fn hermite(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut r = 0;
    for c in 0..n {
        // Euclid on column c among rows r..
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    m.swap(r, p);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, p);
            for i in r + 1..m.len() {
                let f = m[i][c] / m[r][c];
                if f != 0 {
                    for j in 0..n {
                        m[i][j] -= f * m[r][j];
                    }
                }
            }
        }
        if r >= m.len() || m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let f = num_integer::Integer::div_floor(&m[i][c], &m[r][c]);
            if f != 0 {
                for j in 0..n {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Basis of the integer kernel `{x ∈ Z^n : A x = 0}`. The basis spans a
/// saturated sublattice.
pub fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let m = rows.len();
    // [A^T | I]: unimodular row operations on the left block.
    let mut aug: Vec<Vec<i128>> = (0..ncols)
        .map(|i| {
            let mut row: Vec<i128> = rows.iter().map(|r| r[i] as i128).collect();
            row.extend((0..ncols).map(|j| i128::from(i == j)));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..m {
        loop {
            let nz: Vec<usize> = (r..ncols).filter(|&i| aug[i][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    aug.swap(r, p);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| aug[i][c].abs()).unwrap();
            aug.swap(r, p);
            for i in r + 1..ncols {
                let f = aug[i][c] / aug[r][c];
                if f != 0 {
                    for j in 0..m + ncols {
                        aug[i][j] -= f * aug[r][j];
                    }
                }
            }
        }
        if r < ncols && aug[r][c] != 0 {
            r += 1;
        }
    }
    aug[r..]
        .iter()
        .map(|row| {
            row[m..]
                .iter()
                .map(|&x| i64::try_from(x).expect("kernel vector overflows i64"))
                .collect()
        })
        .collect()
}

/// Basis of `span(rows) ∩ Z^n`.
pub fn saturation(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let perp = integer_kernel(rows, ncols);
    if perp.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    integer_kernel(&perp, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![1, 0], vec![-1, -3]]), -3);
        assert_eq!(det(&[vec![1, 0, 0], vec![0, 0, 1], vec![1, 2, -1]]), -2);
        assert_eq!(det(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]), 2);
        assert_eq!(det(&[vec![2, 4], vec![1, 2]]), 0);
    }

    #[test]
    fn hermite_form() {
        let h = hermite(&[vec![1, 0], vec![1, 2]]);
        assert_eq!(h, vec![vec![1, 0], vec![0, 2]]);
        let h = hermite(&[vec![1, 0], vec![-1, -3]]);
        assert_eq!(h, vec![vec![1, 0], vec![0, 3]]);
        let h = hermite(&[vec![2, 1], vec![0, 3]]);
        assert_eq!(h[0][0] * h[1][1], 6);
        assert!(h[0][1] >= 0 && h[0][1] < h[1][1]);
    }

    #[test]
    fn kernels() {
        let k = integer_kernel(&[vec![1, 2, -1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[1, 2, -1]), 0);
        }
        let s = saturation(&[vec![2, 2, 0]], 3);
        assert_eq!(s.len(), 1);
        assert_eq!(primitive(&s[0]).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 0]);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&[1, -3]));
        assert!(!is_primitive(&[2, 4]));
        assert_eq!(primitive(&[2, -4]), vec![1, -2]);
        let q = |n, d| Rational::new(Integer::from(n), Integer::from(d));
        assert_eq!(clear_denominators(&[q(1, 2), q(-1, 3)]), vec![3, -2]);
    }
}
