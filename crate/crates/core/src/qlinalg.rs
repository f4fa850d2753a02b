//! Small exact and floating linear algebra kernels.
//!
//! The exact routines run Gauss-Jordan elimination over the rationals;
//! they back both rank computations for specialized boundary maps and
//! the canonical row-reduced keys used to identify affine flats. The
//! floating rank uses full pivoting with a relative threshold.

use num::complex::Complex64;
use num::{Signed, Zero};

use crate::rat::Rat;

/// Reduced row echelon form over the rationals. Returns the canonical
/// reduced rows (unit pivots, zeros above and below, zero rows dropped)
/// together with the pivot column of each row.
pub fn rref(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for x in m[r][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Exact rank of a rational matrix.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows).1.len()
}

/// Reduces `row` against reduced rows `basis` (as produced by [`rref`]);
/// returns the residue. The residue is zero iff `row` lies in the span.
pub fn reduce_against(basis: &[Vec<Rat>], pivots: &[usize], row: &[Rat]) -> Vec<Rat> {
    let mut v = row.to_vec();
    for (b, &p) in basis.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &f * y;
            }
        }
    }
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Solves the square system `a x = b` exactly; `None` when singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].clone().recip();
        for x in aug[c][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let sub = &f * &aug[c][j];
                    aug[i][j] -= sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Numerical rank via full-pivot elimination with a threshold relative
/// to the largest initial entry.
pub fn rank_complex(rows: &[Vec<Complex64>], tol: f64) -> usize {
    let mut m: Vec<Vec<Complex64>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let cutoff = tol * scale;
    let mut rank = 0;
    let mut used_cols = vec![false; ncols];
    for _ in 0..nrows.min(ncols) {
        let mut best = (0usize, 0usize, 0.0f64);
        for i in rank..nrows {
            for (j, used) in used_cols.iter().enumerate() {
                if !used {
                    let v = m[i][j].norm();
                    if v > best.2 {
                        best = (i, j, v);
                    }
                }
            }
        }
        if best.2 <= cutoff {
            break;
        }
        let (pi, pj, _) = best;
        m.swap(rank, pi);
        used_cols[pj] = true;
        let piv = m[rank][pj];
        for i in rank + 1..nrows {
            let f = m[i][pj] / piv;
            if f.norm() != 0.0 {
                for j in 0..ncols {
                    let sub = f * m[rank][j];
                    m[i][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact l1 norm, handy for perturbation bounds.
pub fn l1_norm(v: &[Rat]) -> Rat {
    v.iter().fold(Rat::zero(), |acc, x| acc + x.abs())
}

/// Dot product of exact vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}
