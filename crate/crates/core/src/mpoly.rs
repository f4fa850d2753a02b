//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! These carry the critical point systems: exact construction and
//! differentiation happen here, while the homotopy tracker consumes the
//! compiled floating form.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::{ToPrimitive, Zero};

use crate::rat::Rat;
use crate::{Error, Result};

/// A polynomial in `nvars` variables: a map from exponent vectors to
/// nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rat::from_integer(1.into()))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.add_term(exps, Rat::from_integer(1.into()));
        p
    }

    /// Builds `c0 + c1 x1 + ... + cn xn` from a constant and linear
    /// coefficients.
    pub fn affine(linear: &[Rat], constant: &Rat) -> Self {
        let nvars = linear.len();
        let mut p = MPoly::constant(nvars, constant.clone());
        for (i, c) in linear.iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[i] = 1;
            p.add_term(exps, c.clone());
        }
        p
    }

    /// Builds a polynomial from `(exponent vector, coefficient)` pairs,
    /// merging repeats and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = MPoly::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::InvalidInput(format!(
                    "exponent vector has length {}, expected {}",
                    exps.len(),
                    nvars
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest coefficient magnitude, or zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rat {
        use num::Signed;
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }

    pub fn partial(&self, i: usize) -> MPoly {
        assert!(i < self.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(exps, c * Rat::from_integer(e[i].into()));
        }
        out
    }

    /// Re-embeds into a larger variable set, keeping variable `i` at
    /// position `i`.
    pub fn extend_vars(&self, nvars: usize) -> MPoly {
        assert!(nvars >= self.nvars);
        MPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut exps = e.clone();
                    exps.resize(nvars, 0);
                    (exps, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} variables",
                x.len(),
                self.nvars
            )));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, ei) in x.iter().zip(e) {
                for _ in 0..*ei {
                    term *= xi;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Floating form for the numerical tracker: `(coefficient,
    /// exponents)` pairs.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let num = c.numer().to_f64().unwrap_or(f64::NAN);
                    let den = c.denom().to_f64().unwrap_or(f64::NAN);
                    (Complex64::new(num / den, 0.0), e.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            use num::Signed;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            use num::One;
            let mag = c.abs();
            let is_constant_term = e.iter().all(|x| *x == 0);
            if !mag.is_one() || is_constant_term {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if !is_constant_term {
                    write!(f, "*")?;
                }
            }
            let mut printed = false;
            for (i, ei) in e.iter().enumerate() {
                if *ei == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                if *ei > 1 {
                    write!(f, "^{ei}")?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

/// A polynomial compiled to floating coefficients.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    pub nvars: usize,
    pub terms: Vec<(Complex64, Vec<u32>)>,
}

impl CompiledPoly {
    /// Evaluates using precomputed variable powers; `powers[i][e]` must
    /// be `x_i^e` up to the maximum exponent of variable `i`.
    pub fn eval_with_powers(&self, powers: &[Vec<Complex64>]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut term = *c;
            for (i, ei) in e.iter().enumerate() {
                if *ei > 0 {
                    term *= powers[i][*ei as usize];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut term = *c;
            for (xi, ei) in x.iter().zip(e) {
                term *= xi.powu(*ei);
            }
            acc += term;
        }
        acc
    }

    pub fn max_exps(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.nvars];
        for (_, e) in &self.terms {
            for (mi, ei) in m.iter_mut().zip(e) {
                *mi = (*mi).max(*ei);
            }
        }
        m
    }
}
