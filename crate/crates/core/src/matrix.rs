//! Dense matrices over the Laurent ring.

use std::fmt;

use num::complex::Complex64;

use crate::laurent::{LaurentPoly, LaurentUnit};
use crate::rat::Rat;
use crate::{Error, Result};

/// A dense `rows x cols` matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Keeps the rows `lo..hi`.
    pub fn row_slice(&self, lo: usize, hi: usize) -> PolyMatrix {
        PolyMatrix {
            rows: hi - lo,
            cols: self.cols,
            data: self.data[lo * self.cols..hi * self.cols].to_vec(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += q * row[src]`.
    pub fn row_add(&mut self, target: usize, src: usize, q: &LaurentPoly) {
        for j in 0..self.cols {
            let v = self.get(target, j) + &(q * self.get(src, j));
            self.set(target, j, v);
        }
    }

    /// `col[target] += q * col[src]`.
    pub fn col_add(&mut self, target: usize, src: usize, q: &LaurentPoly) {
        for i in 0..self.rows {
            let v = self.get(i, target) + &(q * self.get(i, src));
            self.set(i, target, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, u: &LaurentUnit) {
        let up = u.to_poly();
        for j in 0..self.cols {
            let v = self.get(i, j) * &up;
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, u: &LaurentUnit) {
        let up = u.to_poly();
        for i in 0..self.rows {
            let v = self.get(i, j) * &up;
            self.set(i, j, v);
        }
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by cofactor expansion; intended for the small square
    /// transform matrices produced by normal form computations.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(det_rec(self))
    }

    /// Exact rational specialization `t = s`, `s != 0`.
    pub fn specialize(&self, s: &Rat) -> Result<Vec<Vec<Rat>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).evaluate(s)?);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Floating specialization `t = s`, `s != 0`.
    pub fn specialize_complex(&self, s: Complex64) -> Result<Vec<Vec<Complex64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).eval_complex(s)?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

fn det_rec(m: &PolyMatrix) -> LaurentPoly {
    let n = m.nrows();
    if n == 0 {
        return LaurentPoly::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut det = LaurentPoly::zero();
    for i in 0..n {
        let a = m.get(i, 0);
        if a.is_zero() {
            continue;
        }
        let mut minor = PolyMatrix::zeros(n - 1, n - 1);
        let mut r = 0;
        for ii in 0..n {
            if ii == i {
                continue;
            }
            for jj in 1..n {
                minor.set(r, jj - 1, m.get(ii, jj).clone());
            }
            r += 1;
        }
        let term = a * &det_rec(&minor);
        det = if i % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn tpoly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(pairs)
    }

    #[test]
    fn mul_identity() {
        let m = PolyMatrix::from_rows(vec![
            vec![tpoly(&[(1, 1), (0, -1)]), tpoly(&[(0, 2)])],
            vec![LaurentPoly::zero(), tpoly(&[(-1, 1)])],
        ])
        .unwrap();
        let id = PolyMatrix::identity(2);
        assert_eq!(m.mul(&id).unwrap(), m);
        assert_eq!(id.mul(&m).unwrap(), m);
    }

    #[test]
    fn row_and_col_ops_match_elementary_matrices() {
        let m = PolyMatrix::from_rows(vec![
            vec![tpoly(&[(0, 1)]), tpoly(&[(1, 1)])],
            vec![tpoly(&[(0, 3)]), tpoly(&[(2, 1)])],
        ])
        .unwrap();
        let q = tpoly(&[(1, -2)]);

        let mut e = PolyMatrix::identity(2);
        e.set(1, 0, q.clone());
        let mut by_op = m.clone();
        by_op.row_add(1, 0, &q);
        assert_eq!(e.mul(&m).unwrap(), by_op);

        let mut e = PolyMatrix::identity(2);
        e.set(0, 1, q.clone());
        let mut by_op = m.clone();
        by_op.col_add(1, 0, &q);
        assert_eq!(m.mul(&e).unwrap(), by_op);
    }

    #[test]
    fn determinant_small() {
        let m = PolyMatrix::from_rows(vec![
            vec![tpoly(&[(1, 1)]), tpoly(&[(0, 1)])],
            vec![tpoly(&[(0, 1)]), tpoly(&[(-1, 1)])],
        ])
        .unwrap();
        assert!(m.determinant().unwrap().is_zero());

        let m = PolyMatrix::from_rows(vec![
            vec![tpoly(&[(1, 1), (0, -1)]), tpoly(&[(0, 1)])],
            vec![LaurentPoly::zero(), tpoly(&[(1, 1), (0, 1)])],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), tpoly(&[(2, 1), (0, -1)]));
        assert_eq!(PolyMatrix::zeros(0, 0).determinant().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn specialization() {
        let m = PolyMatrix::from_rows(vec![vec![tpoly(&[(1, 1), (0, -1)]), tpoly(&[(-1, 2)])]]).unwrap();
        let sp = m.specialize(&rat_int(2)).unwrap();
        assert_eq!(sp[0][0], rat_int(1));
        assert_eq!(sp[0][1], rat_int(1));
        assert!(m.specialize(&rat_int(0)).is_err());
    }
}
