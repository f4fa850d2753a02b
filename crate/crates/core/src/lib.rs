//! Exact algebra for twisted topology of torus-mapped spaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`laurent`]: Laurent polynomials over the rationals with exact
//!   arithmetic, unit normal forms, gcd, and cyclotomic factor detection.
//! * [`matrix`] and [`snf`]: matrices over the Laurent ring and Smith
//!   normal form with invertible transforms.
//! * [`complexes`]: finite free chain complexes twisted by an integer
//!   weight vector, built from group presentations via free differential
//!   calculus or as Koszul-style torus skeletons.
//! * [`alexander`]: homology of twisted complexes as finitely generated
//!   modules over the Laurent ring, with ranks, torsion invariants, and a
//!   certified vanishing test for the associated completed homology.
//! * [`localsys`]: dimensions of homology with coefficients in rank-one
//!   specializations `t = s`, and randomized vanishing scans.
//! * [`arrangements`]: intersection posets of affine hyperplane
//!   arrangements, characteristic polynomials, complement Euler numbers,
//!   and bounded region counts.
//! * [`mpoly`] and [`critical`]: multivariate polynomials and a homotopy
//!   continuation solver for critical points of master functions.

pub mod alexander;
pub mod arrangements;
pub mod complexes;
pub mod critical;
pub mod laurent;
pub mod localsys;
pub mod matrix;
pub mod mpoly;
pub mod qlinalg;
pub mod snf;

mod rat;

pub use rat::{format_rat, parse_rat, Rat};

use thiserror::Error;

/// Errors shared across the crate's exact and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("normal form of the zero polynomial is undefined")]
    ZeroNormalForm,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("evaluation at a pole or excluded point: {0}")]
    BadEvaluation(String),
    #[error("chain complex is malformed: {0}")]
    BadComplex(String),
    #[error("arrangement is malformed: {0}")]
    BadArrangement(String),
    #[error("weights fail the genericity check: {0}")]
    NonGeneric(String),
    #[error("path tracking failed: {0}")]
    TrackingFailure(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
