//! Finite free twisted chain complexes over the Laurent ring.
//!
//! A space mapped to a torus pulls the coordinate weights back to a
//! homomorphism from its fundamental group to `Z`; chains then carry
//! coefficients in `Q[t, t^-1]`, with a loop of weight `w` acting as
//! `t^w`. Three constructions produce such complexes:
//!
//! * [`fox_complex`]: the two-complex of a finite group presentation,
//!   with degree-two boundary given by free differential calculus;
//! * [`torus_skeleton`]: the exterior-algebra skeleton of a product of
//!   `k` circles truncated at dimension `n`, with one-cells of weights
//!   `u_1, ..., u_k`;
//! * [`tensor`]: the graded tensor product of two complexes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use crate::{Error, Result};

/// A word in the free group: `(generator index, exponent)` letters.
pub type Word = Vec<(usize, i64)>;

/// A finite presentation with an integer weight per generator.
///
/// The weights define a homomorphism to `Z`, so every relator must have
/// total weight zero and at least one generator must have nonzero
/// weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CWPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub weights: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
    weights: Vec<i64>,
}

impl CWPresentation {
    /// Builds and validates a presentation; relators use the word syntax
    /// of [`CWPresentation::parse_word`].
    pub fn new(generators: Vec<String>, relators: &[&str], weights: Vec<i64>) -> Result<Self> {
        let relators = relators
            .iter()
            .map(|w| Self::parse_word(w, &generators))
            .collect::<Result<Vec<_>>>()?;
        let p = CWPresentation { generators, relators, weights };
        p.validate()?;
        Ok(p)
    }

    /// Parses a word such as `"a b a^-1 b^-1"` or `"a*b^2*a^-1"`;
    /// letters are separated by whitespace or `*`.
    pub fn parse_word(word: &str, generators: &[String]) -> Result<Word> {
        let mut out = Word::new();
        for tok in word.split(|c: char| c.is_whitespace() || c == '*') {
            if tok.is_empty() {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in letter {tok:?}")))?;
                    (n, exp)
                }
                None => (tok, 1),
            };
            let idx = generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?}")))?;
            if exp != 0 {
                out.push((idx, exp));
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if self.generators.is_empty() {
            return Err(Error::InvalidInput("presentation needs at least one generator".into()));
        }
        if self.generators.iter().duplicates().next().is_some() {
            return Err(Error::InvalidInput("generator names must be distinct".into()));
        }
        if self.weights.len() != self.generators.len() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} generators",
                self.weights.len(),
                self.generators.len()
            )));
        }
        if self.weights.iter().all(|w| *w == 0) {
            return Err(Error::InvalidInput("the weight homomorphism must be nonzero".into()));
        }
        for (ri, rel) in self.relators.iter().enumerate() {
            if rel.iter().any(|(g, _)| *g >= self.generators.len()) {
                return Err(Error::InvalidInput(format!("relator {ri} uses an unknown generator")));
            }
            let total: i64 = rel.iter().map(|(g, e)| self.weights[*g] * e).sum();
            if total != 0 {
                return Err(Error::InvalidInput(format!(
                    "relator {ri} has weight {total}; weights must vanish on relators"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PresentationJson = serde_json::from_str(s)?;
        let relator_refs: Vec<&str> = raw.relators.iter().map(|s| s.as_str()).collect();
        Self::new(raw.generators, &relator_refs, raw.weights)
    }
}

/// Free differential of `word` with respect to generator `g`, with the
/// weight homomorphism sending prefixes to powers of `t`.
pub fn fox_derivative(word: &[(usize, i64)], g: usize, weights: &[i64]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut prefix: i64 = 0;
    for &(h, e) in word {
        if e > 0 {
            for _ in 0..e {
                if h == g {
                    acc = &acc + &LaurentPoly::monomial(prefix);
                }
                prefix += weights[h];
            }
        } else {
            for _ in 0..(-e) {
                prefix -= weights[h];
                if h == g {
                    acc = &acc - &LaurentPoly::monomial(prefix);
                }
            }
        }
    }
    acc
}

/// A finite free chain complex over `Q[t, t^-1]`.
///
/// `boundaries[i]` is the map from degree `i + 1` to degree `i`, of
/// shape `ranks[i] x ranks[i + 1]`; consecutive boundaries compose to
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub top_dim: usize,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<PolyMatrix>,
    pub label: String,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    top_dim: usize,
    ranks: Vec<usize>,
    boundaries: Vec<Vec<Vec<LaurentPoly>>>,
    label: String,
}

impl TwistedComplex {
    pub fn new(
        ranks: Vec<usize>,
        boundaries: Vec<PolyMatrix>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::BadComplex("a complex needs at least degree zero".into()));
        }
        let c = TwistedComplex {
            top_dim: ranks.len() - 1,
            ranks,
            boundaries,
            label: label.into(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ranks.len() != self.top_dim + 1 {
            return Err(Error::BadComplex(format!(
                "{} ranks for top dimension {}",
                self.ranks.len(),
                self.top_dim
            )));
        }
        if self.boundaries.len() != self.top_dim {
            return Err(Error::BadComplex(format!(
                "{} boundary maps for top dimension {}",
                self.boundaries.len(),
                self.top_dim
            )));
        }
        for (i, b) in self.boundaries.iter().enumerate() {
            if b.nrows() != self.ranks[i] || b.ncols() != self.ranks[i + 1] {
                return Err(Error::BadComplex(format!(
                    "boundary {} has shape {}x{}, expected {}x{}",
                    i + 1,
                    b.nrows(),
                    b.ncols(),
                    self.ranks[i],
                    self.ranks[i + 1]
                )));
            }
        }
        for i in 0..self.boundaries.len().saturating_sub(1) {
            let comp = self.boundaries[i].mul(&self.boundaries[i + 1])?;
            if !comp.is_zero() {
                return Err(Error::BadComplex(format!(
                    "boundaries {} and {} do not compose to zero",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(())
    }

    /// The boundary map out of degree `i` (`1 <= i <= top_dim`).
    pub fn boundary(&self, i: usize) -> &PolyMatrix {
        &self.boundaries[i - 1]
    }

    pub fn euler_char(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, r)| if i % 2 == 0 { *r as i64 } else { -(*r as i64) })
            .sum()
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = ComplexJson {
            top_dim: self.top_dim,
            ranks: self.ranks.clone(),
            boundaries: self
                .boundaries
                .iter()
                .map(|b| (0..b.nrows()).map(|i| b.row(i).to_vec()).collect())
                .collect(),
            label: self.label.clone(),
        };
        Ok(serde_json::to_string_pretty(&serde_json::to_value(&raw)?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(s)?;
        if raw.ranks.len() != raw.top_dim + 1 {
            return Err(Error::BadComplex(format!(
                "{} ranks for top dimension {}",
                raw.ranks.len(),
                raw.top_dim
            )));
        }
        if raw.boundaries.len() != raw.top_dim {
            return Err(Error::BadComplex(format!(
                "{} boundary maps for top dimension {}",
                raw.boundaries.len(),
                raw.top_dim
            )));
        }
        let mut boundaries = Vec::with_capacity(raw.boundaries.len());
        for (i, rows) in raw.boundaries.into_iter().enumerate() {
            let (nr, nc) = (raw.ranks[i], raw.ranks[i + 1]);
            let mut m = PolyMatrix::zeros(nr, nc);
            if !rows.is_empty() {
                if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
                    return Err(Error::BadComplex(format!(
                        "boundary {} entries do not match shape {}x{}",
                        i + 1,
                        nr,
                        nc
                    )));
                }
                for (r, row) in rows.into_iter().enumerate() {
                    for (c, p) in row.into_iter().enumerate() {
                        m.set(r, c, p);
                    }
                }
            } else if nr != 0 && nc != 0 {
                return Err(Error::BadComplex(format!(
                    "boundary {} entries do not match shape {}x{}",
                    i + 1,
                    nr,
                    nc
                )));
            }
            boundaries.push(m);
        }
        TwistedComplex::new(raw.ranks, boundaries, raw.label)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let s = fs::read_to_string(path)?;
        Self::from_json(&s)
    }
}

/// The chain complex of the two-complex of a presentation: one zero
/// cell, an edge per generator, a face per relator. Presentations
/// without relators yield a one-dimensional complex.
pub fn fox_complex(p: &CWPresentation, label: impl Into<String>) -> Result<TwistedComplex> {
    p.validate()?;
    let g = p.generators.len();
    let mut d1 = PolyMatrix::zeros(1, g);
    for (j, w) in p.weights.iter().enumerate() {
        d1.set(0, j, LaurentPoly::t_pow_minus_one(*w));
    }
    if p.relators.is_empty() {
        return TwistedComplex::new(vec![1, g], vec![d1], label);
    }
    let mut d2 = PolyMatrix::zeros(g, p.relators.len());
    for (c, rel) in p.relators.iter().enumerate() {
        for r in 0..g {
            d2.set(r, c, fox_derivative(rel, r, &p.weights));
        }
    }
    TwistedComplex::new(vec![1, g, p.relators.len()], vec![d1, d2], label)
}

/// A circle whose loop has weight `w != 0`.
pub fn circle(w: i64) -> Result<TwistedComplex> {
    if w == 0 {
        return Err(Error::InvalidInput("circle weight must be nonzero".into()));
    }
    let d1 = PolyMatrix::from_rows(vec![vec![LaurentPoly::t_pow_minus_one(w)]])?;
    TwistedComplex::new(vec![1, 1], vec![d1], format!("circle(w={w})"))
}

/// The `n`-skeleton of the product of `k` circles with one-cell weights
/// `u`. Cells in degree `i` are the size-`i` subsets of the circles in
/// lexicographic order; the boundary of a cell drops one circle at a
/// time with alternating signs.
pub fn torus_skeleton(k: usize, n: usize, u: &[i64]) -> Result<TwistedComplex> {
    if k == 0 {
        return Err(Error::InvalidInput("need at least one circle".into()));
    }
    if n == 0 || n > k {
        return Err(Error::InvalidInput(format!(
            "skeleton dimension must satisfy 1 <= n <= k, got n={n}, k={k}"
        )));
    }
    if u.len() != k {
        return Err(Error::InvalidInput(format!("{} weights for {} circles", u.len(), k)));
    }
    if u.iter().any(|w| *w == 0) {
        return Err(Error::InvalidInput("all circle weights must be nonzero".into()));
    }

    let subsets: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|i| (0..k).combinations(i).collect())
        .collect();
    let index: Vec<BTreeMap<Vec<usize>, usize>> = subsets
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(idx, s)| (s.clone(), idx))
                .collect()
        })
        .collect();

    let ranks: Vec<usize> = subsets.iter().map(|level| level.len()).collect();
    let mut boundaries = Vec::with_capacity(n);
    for i in 1..=n {
        let mut b = PolyMatrix::zeros(ranks[i - 1], ranks[i]);
        for (col, s) in subsets[i].iter().enumerate() {
            for (j, &circle) in s.iter().enumerate() {
                let mut face = s.clone();
                face.remove(j);
                let row = index[i - 1][&face];
                let mut entry = LaurentPoly::t_pow_minus_one(u[circle]);
                if j % 2 == 1 {
                    entry = -entry;
                }
                b.set(row, col, entry);
            }
        }
        boundaries.push(b);
    }

    TwistedComplex::new(
        ranks,
        boundaries,
        format!("torus_skeleton(k={k}, n={n}, u={u:?})"),
    )
}

/// Graded tensor product. Degree-`i` cells are pairs of cells of
/// degrees `p + q = i`, grouped by descending `p`; the boundary obeys
/// the usual sign rule, negating the second factor's boundary under
/// odd-degree first factors.
pub fn tensor(a: &TwistedComplex, b: &TwistedComplex, label: impl Into<String>) -> Result<TwistedComplex> {
    let top = a.top_dim + b.top_dim;

    let blocks: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|i| {
            let p_hi = i.min(a.top_dim);
            let p_lo = i.saturating_sub(b.top_dim);
            (p_lo..=p_hi).rev().map(|p| (p, i - p)).collect()
        })
        .collect();

    let offsets: Vec<BTreeMap<(usize, usize), usize>> = blocks
        .iter()
        .map(|bl| {
            let mut off = BTreeMap::new();
            let mut acc = 0;
            for &(p, q) in bl {
                off.insert((p, q), acc);
                acc += a.ranks[p] * b.ranks[q];
            }
            off
        })
        .collect();

    let ranks: Vec<usize> = blocks
        .iter()
        .map(|bl| bl.iter().map(|&(p, q)| a.ranks[p] * b.ranks[q]).sum())
        .collect();

    let mut boundaries = Vec::with_capacity(top);
    for i in 1..=top {
        let mut m = PolyMatrix::zeros(ranks[i - 1], ranks[i]);
        for &(p, q) in &blocks[i] {
            let src_off = offsets[i][&(p, q)];
            for s in 0..a.ranks[p] {
                for t in 0..b.ranks[q] {
                    let col = src_off + s * b.ranks[q] + t;
                    if p >= 1 {
                        let da = a.boundary(p);
                        let dst_off = offsets[i - 1][&(p - 1, q)];
                        for s2 in 0..a.ranks[p - 1] {
                            let coeff = da.get(s2, s);
                            if !coeff.is_zero() {
                                let row = dst_off + s2 * b.ranks[q] + t;
                                m.set(row, col, m.get(row, col) + coeff);
                            }
                        }
                    }
                    if q >= 1 {
                        let db = b.boundary(q);
                        let dst_off = offsets[i - 1][&(p, q - 1)];
                        for t2 in 0..b.ranks[q - 1] {
                            let coeff = db.get(t2, t);
                            if !coeff.is_zero() {
                                let row = dst_off + s * b.ranks[q - 1] + t2;
                                let signed = if p % 2 == 1 { -coeff.clone() } else { coeff.clone() };
                                m.set(row, col, m.get(row, col) + &signed);
                            }
                        }
                    }
                }
            }
        }
        boundaries.push(m);
    }

    TwistedComplex::new(ranks, boundaries, label)
}
