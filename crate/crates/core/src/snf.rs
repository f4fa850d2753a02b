//! Smith normal form over the Laurent ring.
//!
//! `Q[t, t^-1]` is Euclidean under the exponent span, so every matrix
//! `M` admits invertible `U`, `V` with `U * M * V` diagonal and each
//! diagonal entry dividing the next. The transforms, their inverses, and
//! their (unit) determinants are accumulated from elementary operations
//! so callers can extract kernels and cokernels without re-inverting
//! anything.

use num::One;

use crate::laurent::{LaurentPoly, LaurentUnit};
use crate::matrix::PolyMatrix;

/// The result of a Smith normal form computation: `u * m * v = d` with
/// `d` diagonal, `d[k] | d[k+1]`, and every nonzero diagonal entry in
/// canonical form.
#[derive(Clone, Debug)]
pub struct SNFResult {
    /// Diagonalized matrix, same shape as the input.
    pub d: PolyMatrix,
    /// Canonical nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub invariant_factors: Vec<LaurentPoly>,
    pub rank: usize,
    pub u: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v: PolyMatrix,
    pub v_inv: PolyMatrix,
    /// Determinants of the transforms; always units.
    pub det_u: LaurentPoly,
    pub det_v: LaurentPoly,
}

struct SnfState {
    d: PolyMatrix,
    u: PolyMatrix,
    u_inv: PolyMatrix,
    v: PolyMatrix,
    v_inv: PolyMatrix,
    det_u: LaurentPoly,
    det_v: LaurentPoly,
}

impl SnfState {
    fn new(m: &PolyMatrix) -> Self {
        SnfState {
            d: m.clone(),
            u: PolyMatrix::identity(m.nrows()),
            u_inv: PolyMatrix::identity(m.nrows()),
            v: PolyMatrix::identity(m.ncols()),
            v_inv: PolyMatrix::identity(m.ncols()),
            det_u: LaurentPoly::one(),
            det_v: LaurentPoly::one(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
        self.det_u = -&self.det_u;
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
        self.det_v = -&self.det_v;
    }

    /// `row[target] += q * row[src]` on the working matrix and `u`; the
    /// inverse transform absorbs the inverse column operation.
    fn row_add(&mut self, target: usize, src: usize, q: &LaurentPoly) {
        self.d.row_add(target, src, q);
        self.u.row_add(target, src, q);
        let neg = -q;
        self.u_inv.col_add(src, target, &neg);
    }

    /// `col[target] += q * col[src]`, mirrored into `v` and `v_inv`.
    fn col_add(&mut self, target: usize, src: usize, q: &LaurentPoly) {
        self.d.col_add(target, src, q);
        self.v.col_add(target, src, q);
        let neg = -q;
        self.v_inv.row_add(src, target, &neg);
    }

    fn scale_row(&mut self, i: usize, w: &LaurentUnit) {
        self.d.scale_row(i, w);
        self.u.scale_row(i, w);
        self.u_inv.scale_col(i, &w.inverse());
        self.det_u = &self.det_u * &w.to_poly();
    }
}

fn min_span_pivot(d: &PolyMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in k..d.nrows() {
        for j in k..d.ncols() {
            if let Some(sp) = d.get(i, j).span() {
                match best {
                    Some((b, _, _)) if b <= sp => {}
                    _ => best = Some((sp, i, j)),
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Computes the Smith normal form of `m` with transforms.
pub fn smith_normal_form(m: &PolyMatrix) -> SNFResult {
    let mut st = SnfState::new(m);
    let steps = m.nrows().min(m.ncols());

    for k in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = min_span_pivot(&st.d, k) else {
                break;
            };
            st.swap_rows(k, pi);
            st.swap_cols(k, pj);

            let mut dirty = false;
            for i in k + 1..st.d.nrows() {
                if st.d.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = st.d.get(i, k).divrem(st.d.get(k, k)).expect("nonzero pivot");
                if !q.is_zero() {
                    st.row_add(i, k, &-&q);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..st.d.ncols() {
                if st.d.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = st.d.get(k, j).divrem(st.d.get(k, k)).expect("nonzero pivot");
                if !q.is_zero() {
                    st.col_add(j, k, &-&q);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Row and column are clear; fold in any remaining entry the
            // pivot fails to divide so the divisibility chain holds.
            for i in k + 1..st.d.nrows() {
                for j in k + 1..st.d.ncols() {
                    let entry = st.d.get(i, j);
                    if entry.is_zero() {
                        continue;
                    }
                    let (_, r) = entry.divrem(st.d.get(k, k)).expect("nonzero pivot");
                    if !r.is_zero() {
                        st.row_add(k, i, &LaurentPoly::one());
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if st.d.get(k, k).is_zero() {
            break;
        }
    }

    let mut invariant_factors = Vec::new();
    for k in 0..steps {
        let entry = st.d.get(k, k).clone();
        if entry.is_zero() {
            break;
        }
        let (unit, prim) = entry.normalize().expect("nonzero diagonal");
        if !unit.coeff.is_one() || unit.exp != 0 {
            st.scale_row(k, &unit.inverse());
        }
        invariant_factors.push(prim);
    }
    let rank = invariant_factors.len();

    SNFResult {
        d: st.d,
        invariant_factors,
        rank,
        u: st.u,
        u_inv: st.u_inv,
        v: st.v,
        v_inv: st.v_inv,
        det_u: st.det_u,
        det_v: st.det_v,
    }
}

impl SNFResult {
    /// Non-unit invariant factors, i.e. the torsion part of the cokernel.
    pub fn torsion_factors(&self) -> Vec<LaurentPoly> {
        self.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use proptest::prelude::*;

    fn tpoly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(pairs)
    }

    fn check_consistency(m: &PolyMatrix, snf: &SNFResult) {
        let umv = snf.u.mul(m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(umv, snf.d, "U*M*V must equal the diagonal form");
        assert_eq!(
            snf.u.mul(&snf.u_inv).unwrap(),
            PolyMatrix::identity(m.nrows()),
            "tracked inverse of U"
        );
        assert_eq!(
            snf.v.mul(&snf.v_inv).unwrap(),
            PolyMatrix::identity(m.ncols()),
            "tracked inverse of V"
        );
        assert!(snf.det_u.is_unit(), "det U must be a unit");
        assert!(snf.det_v.is_unit(), "det V must be a unit");
        assert_eq!(snf.u.determinant().unwrap(), snf.det_u);
        assert_eq!(snf.v.determinant().unwrap(), snf.det_v);
        for i in 0..snf.d.nrows() {
            for j in 0..snf.d.ncols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero(), "off-diagonal at ({i},{j})");
                }
            }
        }
        for w in snf.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]), "{} must divide {}", w[0], w[1]);
        }
        for f in &snf.invariant_factors {
            assert_eq!(*f, f.canonical(), "invariant factors are canonical");
        }
    }

    #[test]
    fn single_entry() {
        let m = PolyMatrix::from_rows(vec![vec![tpoly(&[(1, 1), (0, -1)])]]).unwrap();
        let snf = smith_normal_form(&m);
        check_consistency(&m, &snf);
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.invariant_factors, vec![tpoly(&[(1, 1), (0, -1)])]);
    }

    #[test]
    fn diagonal_out_of_order() {
        // diag((t-1)(t+1), t-1) must reorder into the chain (t-1) | (t^2-1)
        let m = PolyMatrix::from_rows(vec![
            vec![tpoly(&[(2, 1), (0, -1)]), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), tpoly(&[(1, 1), (0, -1)])],
        ])
        .unwrap();
        let snf = smith_normal_form(&m);
        check_consistency(&m, &snf);
        assert_eq!(snf.rank, 2);
        assert_eq!(
            snf.invariant_factors,
            vec![tpoly(&[(1, 1), (0, -1)]), tpoly(&[(2, 1), (0, -1)])]
        );
    }

    #[test]
    fn coprime_diagonal_collapses() {
        // diag(t-1, t+1) ~ diag(1, t^2-1)
        let m = PolyMatrix::from_rows(vec![
            vec![tpoly(&[(1, 1), (0, -1)]), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), tpoly(&[(1, 1), (0, 1)])],
        ])
        .unwrap();
        let snf = smith_normal_form(&m);
        check_consistency(&m, &snf);
        assert_eq!(snf.rank, 2);
        assert_eq!(snf.invariant_factors[0], LaurentPoly::one());
        assert_eq!(snf.invariant_factors[1], tpoly(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn rectangular_row_vector() {
        let m = PolyMatrix::from_rows(vec![vec![
            tpoly(&[(1, 1), (0, -1)]),
            tpoly(&[(2, 1), (0, -1)]),
            tpoly(&[(3, 1), (0, -1)]),
        ]])
        .unwrap();
        let snf = smith_normal_form(&m);
        check_consistency(&m, &snf);
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.invariant_factors, vec![tpoly(&[(1, 1), (0, -1)])]);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let m = PolyMatrix::zeros(2, 3);
        let snf = smith_normal_form(&m);
        check_consistency(&m, &snf);
        assert_eq!(snf.rank, 0);
        assert!(snf.invariant_factors.is_empty());

        let m = PolyMatrix::zeros(0, 3);
        let snf = smith_normal_form(&m);
        check_consistency(&m, &snf);
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn units_normalize_away() {
        let m = PolyMatrix::from_rows(vec![vec![tpoly(&[(-3, 7)])]]).unwrap();
        let snf = smith_normal_form(&m);
        check_consistency(&m, &snf);
        assert_eq!(snf.invariant_factors, vec![LaurentPoly::one()]);
    }

    fn arb_entry() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-2i64..=2), (-4i64..=4)), 0..3)
            .prop_map(|pairs| LaurentPoly::from_int_coeffs(&pairs))
    }

    fn arb_matrix() -> impl Strategy<Value = PolyMatrix> {
        ((1usize..=3), (1usize..=3)).prop_flat_map(|(r, c)| {
            prop::collection::vec(arb_entry(), r * c).prop_map(move |entries| {
                let rows = entries.chunks(c).map(|ch| ch.to_vec()).collect();
                PolyMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn prop_snf_consistent(m in arb_matrix()) {
            let snf = smith_normal_form(&m);
            check_consistency(&m, &snf);
        }
    }
}
