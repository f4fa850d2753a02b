//! Homology of twisted complexes as modules over the Laurent ring.
//!
//! `Q[t, t^-1]` is a principal ideal domain, so each homology module
//! splits as a free part and a torsion part cut out by a divisibility
//! chain of invariant factors. Degree `i` is computed from the Smith
//! normal form of the outgoing boundary: writing `V^-1 * b_{i+1}` in the
//! coordinates diagonalizing `b_i`, the kernel of `b_i` is spanned by
//! the coordinate rows past its rank, and the Smith normal form of the
//! incoming map restricted to those rows yields the invariant factors.

use crate::complexes::TwistedComplex;
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use crate::snf::{smith_normal_form, SNFResult};
use crate::Result;

/// The homology of one degree: a free module of the given rank plus
/// torsion `R/(f_1) + ... + R/(f_m)` with `f_1 | f_2 | ... | f_m`, each
/// factor canonical and a non-unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<LaurentPoly>,
    /// Product of the torsion factors (the order ideal's generator),
    /// `1` when the module is free.
    pub order: LaurentPoly,
}

/// Homology of a twisted complex in every degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderData {
    pub label: String,
    pub degrees: Vec<DegreeHomology>,
    pub euler: i64,
}

/// Per-degree torsion factors with cyclotomic classification.
#[derive(Clone, Debug)]
pub struct TorsionSummary {
    pub degree: usize,
    pub rank: usize,
    pub factors: Vec<LaurentPoly>,
    pub cyclotomic: Vec<bool>,
    pub all_cyclotomic: bool,
}

/// One degree of a vanishing certificate.
#[derive(Clone, Debug)]
pub struct DegreeCheck {
    pub degree: usize,
    pub rank: usize,
    pub rank_vanishes: bool,
    pub torsion_certified: bool,
    pub obstructions: Vec<String>,
}

/// Result of [`novikov_vanishing_certificate`]. `certified` means every
/// degree below `middle` has rank zero and all of its torsion factors
/// have extreme coefficients `1` or `-1`; such factors become invertible
/// after completing the coefficients in either direction, so the
/// completed homology vanishes there. A `false` value is a failure to
/// certify, not a proof of non-vanishing.
#[derive(Clone, Debug)]
pub struct VanishingCertificate {
    pub middle: usize,
    pub certified: bool,
    pub degrees: Vec<DegreeCheck>,
}

/// Computes homology in all degrees.
pub fn homology(c: &TwistedComplex) -> Result<AlexanderData> {
    c.validate()?;
    let top = c.top_dim;
    let snfs: Vec<SNFResult> = (1..=top).map(|i| smith_normal_form(c.boundary(i))).collect();

    let mut degrees = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let n_i = c.ranks[i];
        let (rank_out, kernel_rows) = if i == 0 {
            (0, None)
        } else {
            let snf = &snfs[i - 1];
            (snf.rank, Some(&snf.v_inv))
        };

        let incoming = if i < top {
            let b = c.boundary(i + 1);
            match kernel_rows {
                Some(v_inv) => {
                    let m = v_inv.mul(b)?;
                    debug_assert!(
                        m.row_slice(0, rank_out).is_zero(),
                        "image rows of the diagonalizing change of basis must vanish"
                    );
                    m.row_slice(rank_out, n_i)
                }
                None => b.clone(),
            }
        } else {
            PolyMatrix::zeros(n_i - rank_out, 0)
        };

        let ksnf = smith_normal_form(&incoming);
        if i < top {
            debug_assert_eq!(
                ksnf.rank,
                smith_normal_form(c.boundary(i + 1)).rank,
                "restriction to the kernel preserves the rank of the incoming map"
            );
        }
        let torsion = ksnf.torsion_factors();
        let order = torsion.iter().fold(LaurentPoly::one(), |acc, f| (&acc * f).canonical());
        degrees.push(DegreeHomology {
            degree: i,
            rank: n_i - rank_out - ksnf.rank,
            torsion,
            order,
        });
    }

    Ok(AlexanderData { label: c.label.clone(), degrees, euler: c.euler_char() })
}

/// Ranks of the homology modules; these equal the Betti numbers over
/// any field extension of the Laurent ring's fraction field, in
/// particular over the completed series fields.
pub fn novikov_betti(data: &AlexanderData) -> Vec<usize> {
    data.degrees.iter().map(|d| d.rank).collect()
}

/// Classifies every torsion factor by whether all of its roots are
/// roots of unity.
pub fn torsion_profile(data: &AlexanderData) -> Vec<TorsionSummary> {
    data.degrees
        .iter()
        .map(|d| {
            let cyclotomic: Vec<bool> =
                d.torsion.iter().map(|f| f.is_product_of_cyclotomics()).collect();
            TorsionSummary {
                degree: d.degree,
                rank: d.rank,
                factors: d.torsion.clone(),
                all_cyclotomic: cyclotomic.iter().all(|b| *b),
                cyclotomic,
            }
        })
        .collect()
}

fn extreme_coeffs_are_units(f: &LaurentPoly) -> bool {
    use num::{One, Signed};
    let lo = f.coeff(f.min_exp().unwrap_or(0));
    let hi = f.coeff(f.max_exp().unwrap_or(0));
    lo.abs().is_one() && hi.abs().is_one()
}

/// Certifies vanishing of completed homology below degree `middle`.
pub fn novikov_vanishing_certificate(data: &AlexanderData, middle: usize) -> VanishingCertificate {
    let mut degrees = Vec::new();
    for d in data.degrees.iter().take(middle.min(data.degrees.len())) {
        let rank_vanishes = d.rank == 0;
        let mut obstructions = Vec::new();
        if !rank_vanishes {
            obstructions.push(format!("free rank {} in degree {}", d.rank, d.degree));
        }
        let mut torsion_certified = true;
        for f in &d.torsion {
            if !extreme_coeffs_are_units(f) {
                torsion_certified = false;
                obstructions.push(format!(
                    "factor {f} has a non-unit extreme coefficient; not certified"
                ));
            }
        }
        degrees.push(DegreeCheck {
            degree: d.degree,
            rank: d.rank,
            rank_vanishes,
            torsion_certified,
            obstructions,
        });
    }
    VanishingCertificate {
        middle,
        certified: degrees.iter().all(|d| d.rank_vanishes && d.torsion_certified),
        degrees,
    }
}
