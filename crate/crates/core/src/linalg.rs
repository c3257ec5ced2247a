//! Exact Gaussian elimination over the rationals.
//!
//! Small dense routines (rank, matrix inverse) used for face dimensions
//! and affine-map inversion. Everything is exact; pivots are chosen as
//! the first nonzero entry, which is always safe over ℚ.

use num_traits::{One, Zero};

use crate::rat::Rat;

/// Rank of the row span of `rows` (each row one vector).
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let cols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let p = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &p;
                for j in c..cols {
                    let sub = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// One exact solution of `rows · x = rhs` with free variables set to 0,
/// or `None` if the system is inconsistent.
pub fn solve_particular(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.resize(cols, Rat::zero());
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let p = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &p;
                for j in c..=cols {
                    let sub = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == m.len() {
            break;
        }
    }
    // Non-pivot rows are zero on the left; a nonzero right-hand side there
    // is a contradiction.
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, col) in pivots {
        x[col] = &m[row][cols] / &m[row][col];
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(matrix: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rat>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, pivot);
        let p = aug[c][c].clone();
        for j in c..2 * n {
            aug[c][j] = &aug[c][j] / &p;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let factor = aug[i][c].clone();
                for j in c..2 * n {
                    let sub = &factor * &aug[c][j];
                    aug[i][j] = &aug[i][j] - sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
