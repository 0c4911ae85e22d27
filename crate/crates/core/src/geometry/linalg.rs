//! Exact dense linear algebra over the rationals.
//!
//! Everything here is Gaussian elimination in one guise or another; the
//! matrices involved are small (dimension of a book, not of a complex), so
//! dense exact arithmetic is the right trade-off.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for j in c..ncols {
            rows[r][j] = &rows[r][j] / &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// One solution of `A x = b` (free variables set to 0), or `None` when the
/// system is inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len(), "matrix/rhs row mismatch");
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let mut v = row.clone();
            v.push(rhs.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Basis of the right null space `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square rational matrix.
pub fn det(mat: &[Vec<Rat>]) -> Rat {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut acc = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(k, p);
            acc = -acc;
        }
        acc *= m[k][k].clone();
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] = &m[i][j] - &delta;
            }
        }
    }
    acc
}

/// Determinant of a square integer matrix (Bareiss fraction-free scheme,
/// so all intermediate values stay integral).
pub fn int_det(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = mat.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Greatest common divisor of the absolute values of all `k x k` minors of
/// a `k x c` matrix (`k <= c`). Returns 0 when every minor vanishes.
pub fn gcd_of_maximal_minors(rows: &[Vec<BigInt>]) -> BigInt {
    use num_integer::Integer;
    let k = rows.len();
    let c = rows.first().map(|r| r.len()).unwrap_or(0);
    assert!(k <= c, "more rows than columns");
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
            .collect();
        g = g.gcd(&int_det(&sub).abs());
        if g.is_one() {
            return g; // cannot get smaller
        }
        // next k-combination of {0..c}
        let mut i = k;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if cols[i] != i + c - k {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}
