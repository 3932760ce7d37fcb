//! Small exact linear-algebra routines over the rationals and the integers.
//!
//! Everything here is written for the desk scale of this crate (dimensions
//! up to ~16): plain Gaussian elimination with exact pivots, no pivol
//! strategies beyond "first nonzero".

use num_bigint::BigInt;
use num_traits::{Euclid, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::Q;

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn scale(v: &[Q], c: &Q) -> Vec<Q> {
    v.iter().map(|x| x * c).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| -x).collect()
}

/// Determinant by fraction-free-ish Gaussian elimination (exact).
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut result = Q::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return Q::zero(),
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            result = -result;
        }
        let pivot = a[col][col].clone();
        result *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let t = &a[col][c] * &factor;
                a[r][c] -= t;
            }
        }
    }
    result
}

/// Rank of a rational matrix (rows may outnumber columns or vice versa).
pub fn rank(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let pivot = match (r..a.len()).find(|&i| !a[i][c].is_zero()) {
            Some(i) => i,
            None => continue,
        };
        a.swap(r, pivot);
        let p = a[r][c].clone();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &p;
                for j in c..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Solves the square system `a x = b` exactly. Errors on singular `a`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Result<Vec<Q>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(pivot_row, col);
        let pivot = m[col][col].clone();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                for c in col..=n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
    }
    Ok(m
        .iter()
        .enumerate()
        .map(|(i, row)| &row[n] / &row[i])
        .collect())
}

/// Inverse of a square rational matrix.
pub fn invert(a: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Q> = (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
        cols.push(solve(a, &e)?);
    }
    // `cols[j]` is the j-th column of the inverse; transpose into rows.
    Ok((0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect())
}

/// Normal of the hyperplane through `b` affinely independent points,
/// via generalized cross product of the difference vectors, together with
/// its offset: the plane is `{x : <normal, x> = offset}`.
///
/// Returns `None` when the points are affinely dependent.
pub fn hyperplane(points: &[Vec<Q>]) -> Option<(Vec<Q>, Q)> {
    let b = points.len();
    debug_assert!(points.iter().all(|p| p.len() == b));
    if b == 1 {
        // A single point p on the line: plane {x = p} has normal 1.
        return Some((vec![Q::one()], points[0][0].clone()));
    }
    let diffs: Vec<Vec<Q>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let mut normal = Vec::with_capacity(b);
    for i in 0..b {
        // cofactor: determinant of diffs with column i removed
        let minor: Vec<Vec<Q>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let c = det(&minor);
        normal.push(if i % 2 == 0 { c } else { -c });
    }
    if normal.iter().all(|x| x.is_zero()) {
        return None;
    }
    let offset = dot(&normal, &points[0]);
    Some((normal, offset))
}

/// Hermite normal form (row style, non-negative pivots) of an integer matrix.
/// Returns the nonzero rows.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        // Euclidean reduction of column `col` below `row`.
        loop {
            let mut idx: Option<usize> = None;
            for r in row..m.len() {
                if !m[r][col].is_zero() {
                    idx = match idx {
                        Some(i) if m[i][col].magnitude() <= m[r][col].magnitude() => Some(i),
                        _ => Some(r),
                    };
                }
            }
            let Some(i) = idx else { break };
            m.swap(row, i);
            if m[row][col].is_negative() {
                for c in 0..cols {
                    m[row][c] = -m[row][c].clone();
                }
            }
            let mut any = false;
            let pivot = m[row][col].clone();
            for r in row + 1..m.len() {
                if !m[r][col].is_zero() {
                    let f = &m[r][col] / &pivot; // floor-ish; exactness handled by loop
                    for c in 0..cols {
                        let t = &m[row][c] * &f;
                        m[r][c] -= t;
                    }
                    if !m[r][col].is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if m[row][col].is_zero() {
            continue;
        }
        // Reduce entries above the pivot to the canonical range [0, pivot).
        let pivot = m[row][col].clone();
        for r in 0..row {
            let f = Euclid::div_euclid(&m[r][col], &pivot);
            if !f.is_zero() {
                for c in 0..cols {
                    let t = &m[row][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
        row += 1;
    }
    m.truncate(row);
    m
}

/// True when the integer row vectors generate all of `Z^dim`.
pub fn generates_full_lattice(rows: &[Vec<BigInt>], dim: usize) -> bool {
    if rows.is_empty() {
        return dim == 0;
    }
    let h = hermite_normal_form(rows);
    if h.len() < dim {
        return false;
    }
    // HNF of a full generating set is the identity.
    for (i, row) in h.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if *x != want {
                return false;
            }
        }
    }
    true
}
