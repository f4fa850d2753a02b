//! Homology with coefficients in rank-one specializations `t = s`.
//!
//! Specializing the deck variable at a nonzero scalar `s` turns a
//! twisted complex into a complex of vector spaces. The resulting
//! dimensions are computed two independent ways: directly, from exact
//! ranks of the specialized boundary maps, and through the module
//! structure, where degree `i` picks up the free rank plus one
//! dimension for every invariant factor of degrees `i` and `i - 1`
//! vanishing at `s`. The scan samples random specializations, flags the
//! finitely many exceptional ones, and cross-checks both computations.

use num::complex::Complex64;
use num::{BigInt, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alexander::{homology, AlexanderData};
use crate::complexes::TwistedComplex;
use crate::laurent::LaurentPoly;
use crate::qlinalg;
use crate::rat::Rat;
use crate::{Error, Result};

/// A rank-one coefficient system: the deck variable acts by `s`.
#[derive(Clone, Debug)]
pub enum LocalSystemSpec {
    Rational(Rat),
    Complex(Complex64),
}

impl LocalSystemSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = match self {
            LocalSystemSpec::Rational(s) => s.is_zero(),
            LocalSystemSpec::Complex(s) => s.norm_sqr() == 0.0,
        };
        if bad {
            Err(Error::BadEvaluation("the deck variable must act invertibly, s != 0".into()))
        } else {
            Ok(())
        }
    }
}

/// Relative pivot threshold for floating specializations.
pub const COMPLEX_RANK_TOL: f64 = 1e-8;

/// Dimensions of homology after specializing at `spec`, from ranks of
/// the specialized boundaries.
pub fn twisted_dims(c: &TwistedComplex, spec: &LocalSystemSpec) -> Result<Vec<usize>> {
    spec.validate()?;
    c.validate()?;
    let ranks: Vec<usize> = match spec {
        LocalSystemSpec::Rational(s) => (1..=c.top_dim)
            .map(|i| Ok(qlinalg::rank(&c.boundary(i).specialize(s)?)))
            .collect::<Result<Vec<_>>>()?,
        LocalSystemSpec::Complex(s) => (1..=c.top_dim)
            .map(|i| {
                Ok(qlinalg::rank_complex(
                    &c.boundary(i).specialize_complex(*s)?,
                    COMPLEX_RANK_TOL,
                ))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let mut dims = Vec::with_capacity(c.top_dim + 1);
    for i in 0..=c.top_dim {
        let out = if i == 0 { 0 } else { ranks[i - 1] };
        let into = if i < c.top_dim { ranks[i] } else { 0 };
        dims.push(c.ranks[i] - out - into);
    }
    Ok(dims)
}

/// The number of invariant factors of degree `i` vanishing at `s`.
fn vanishing_factors(data: &AlexanderData, i: usize, s: &Rat) -> Result<usize> {
    let Some(d) = data.degrees.get(i) else {
        return Ok(0);
    };
    let mut n = 0;
    for f in &d.torsion {
        if f.evaluate(s)?.is_zero() {
            n += 1;
        }
    }
    Ok(n)
}

/// Dimensions of specialized homology predicted by the module
/// structure: free rank plus vanishing counts in degrees `i` and
/// `i - 1`.
pub fn milnor_dims(data: &AlexanderData, s: &Rat) -> Result<Vec<usize>> {
    if s.is_zero() {
        return Err(Error::BadEvaluation("the deck variable must act invertibly, s != 0".into()));
    }
    let mut dims = Vec::with_capacity(data.degrees.len());
    for i in 0..data.degrees.len() {
        let mut d = data.degrees[i].rank + vanishing_factors(data, i, s)?;
        if i > 0 {
            d += vanishing_factors(data, i - 1, s)?;
        }
        dims.push(d);
    }
    Ok(dims)
}

/// Exact rational roots of a torsion factor, by testing the divisor
/// pairs of the extreme integer coefficients. Factors with extreme
/// coefficients too large to factor are skipped.
pub fn rational_roots(f: &LaurentPoly) -> Vec<Rat> {
    let p = f.canonical();
    if p.is_zero() || p.is_one() {
        return Vec::new();
    }
    let lead = p.coeff(p.max_exp().unwrap());
    let cons = p.coeff(p.min_exp().unwrap());
    let (Some(lead), Some(cons)) = (big_to_i64(lead.numer()), big_to_i64(cons.numer())) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    for num in divisors(cons.unsigned_abs()) {
        for den in divisors(lead.unsigned_abs()) {
            for sign in [1i64, -1] {
                let cand = Rat::new(BigInt::from(sign * num as i64), BigInt::from(den as i64));
                if cand.is_zero() {
                    continue;
                }
                if p.evaluate(&cand).map(|v| v.is_zero()).unwrap_or(false)
                    && !roots.contains(&cand)
                {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn big_to_i64(b: &BigInt) -> Option<i64> {
    use num::ToPrimitive;
    b.to_i64().filter(|v| v.abs() < 1_000_000_000)
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Scan configuration; `extras` are always included and checked.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub samples: usize,
    pub seed: u64,
    /// Force samples at every rational root of every torsion factor.
    pub include_torsion_roots: bool,
    pub extras: Vec<Rat>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { samples: 25, seed: 0, include_torsion_roots: true, extras: Vec::new() }
    }
}

/// One specialization in a scan report.
#[derive(Clone, Debug)]
pub struct ScanSample {
    pub s: Rat,
    /// `s` is a root of some torsion factor, so dimensions may jump.
    pub exceptional: bool,
    pub dims: Vec<usize>,
    pub milnor: Vec<usize>,
    pub milnor_match: bool,
    pub below_middle_vanish: bool,
    pub middle_dim: usize,
}

/// Result of [`generic_vanishing_scan`].
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub label: String,
    pub middle: usize,
    pub euler: i64,
    /// `(-1)^middle * euler`, the expected generic middle dimension.
    pub expected_middle: i64,
    pub seed: u64,
    pub samples: Vec<ScanSample>,
    /// Every non-exceptional sample vanishes below the middle degree
    /// and hits the expected middle dimension.
    pub generic_ok: bool,
    /// The rank-plus-vanishing-count prediction matches the direct
    /// computation at every sample, exceptional ones included.
    pub milnor_ok: bool,
}

/// Samples random nonzero rational specializations, compares the direct
/// and module-theoretic dimension computations, and checks generic
/// vanishing below the `middle` degree.
pub fn generic_vanishing_scan(
    c: &TwistedComplex,
    middle: usize,
    config: &ScanConfig,
) -> Result<ScanReport> {
    if middle > c.top_dim {
        return Err(Error::InvalidInput(format!(
            "middle degree {middle} exceeds top dimension {}",
            c.top_dim
        )));
    }
    let data = homology(c)?;
    let euler = c.euler_char();
    let expected_middle = if middle % 2 == 0 { euler } else { -euler };

    let mut points: Vec<(Rat, bool)> = Vec::new();
    let exceptional = |s: &Rat| -> Result<bool> {
        for d in &data.degrees {
            for f in &d.torsion {
                if f.evaluate(s)?.is_zero() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    };

    if config.include_torsion_roots {
        let mut forced: Vec<Rat> = Vec::new();
        for d in &data.degrees {
            for f in &d.torsion {
                for r in rational_roots(f) {
                    if !forced.contains(&r) {
                        forced.push(r);
                    }
                }
            }
        }
        forced.sort();
        for r in forced {
            points.push((r, true));
        }
    }
    for s in &config.extras {
        if s.is_zero() {
            return Err(Error::BadEvaluation("extra sample at s = 0".into()));
        }
        points.push((s.clone(), exceptional(s)?));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut produced = 0;
    let mut attempts = 0;
    while produced < config.samples && attempts < 200 * (config.samples + 1) {
        attempts += 1;
        let num = rng.random_range(2i64..=97);
        let den = rng.random_range(2i64..=97);
        let s = Rat::new(BigInt::from(num), BigInt::from(den));
        if exceptional(&s)? {
            continue;
        }
        points.push((s, false));
        produced += 1;
    }
    if produced < config.samples {
        return Err(Error::InvalidInput(
            "could not find enough non-exceptional sample points".into(),
        ));
    }

    let mut samples = Vec::with_capacity(points.len());
    for (s, exceptional) in points {
        let dims = twisted_dims(c, &LocalSystemSpec::Rational(s.clone()))?;
        let milnor = milnor_dims(&data, &s)?;
        let milnor_match = dims == milnor;
        let below_middle_vanish = dims.iter().take(middle).all(|d| *d == 0);
        let middle_dim = dims[middle];
        samples.push(ScanSample {
            s,
            exceptional,
            dims,
            milnor,
            milnor_match,
            below_middle_vanish,
            middle_dim,
        });
    }

    let generic_ok = samples
        .iter()
        .filter(|s| !s.exceptional)
        .all(|s| s.below_middle_vanish && s.middle_dim as i64 == expected_middle);
    let milnor_ok = samples.iter().all(|s| s.milnor_match);

    Ok(ScanReport {
        label: c.label.clone(),
        middle,
        euler,
        expected_middle,
        seed: config.seed,
        samples,
        generic_ok,
        milnor_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{circle, fox_complex, torus_skeleton, CWPresentation};
    use crate::rat::{rat_frac, rat_int};

    #[test]
    fn circle_specializations() {
        let c = circle(1).unwrap();
        // at s = 1 the boundary vanishes: both dimensions jump to 1
        let dims = twisted_dims(&c, &LocalSystemSpec::Rational(rat_int(1))).unwrap();
        assert_eq!(dims, vec![1, 1]);
        // generic s: the complex is exact
        let dims = twisted_dims(&c, &LocalSystemSpec::Rational(rat_int(2))).unwrap();
        assert_eq!(dims, vec![0, 0]);

        let data = homology(&c).unwrap();
        assert_eq!(milnor_dims(&data, &rat_int(1)).unwrap(), vec![1, 1]);
        assert_eq!(milnor_dims(&data, &rat_int(2)).unwrap(), vec![0, 0]);
        assert!(milnor_dims(&data, &rat_int(0)).is_err());
    }

    #[test]
    fn complex_specialization_matches_rational() {
        let c = torus_skeleton(3, 2, &[1, 2, 1]).unwrap();
        let s = rat_frac(3, 2);
        let exact = twisted_dims(&c, &LocalSystemSpec::Rational(s)).unwrap();
        let float =
            twisted_dims(&c, &LocalSystemSpec::Complex(Complex64::new(1.5, 0.0))).unwrap();
        assert_eq!(exact, float);

        let off_axis =
            twisted_dims(&c, &LocalSystemSpec::Complex(Complex64::new(0.3, 1.1))).unwrap();
        assert_eq!(off_axis, vec![0, 0, 1]);
    }

    #[test]
    fn zero_specialization_rejected() {
        let c = circle(1).unwrap();
        assert!(twisted_dims(&c, &LocalSystemSpec::Rational(rat_int(0))).is_err());
        assert!(twisted_dims(&c, &LocalSystemSpec::Complex(Complex64::new(0.0, 0.0))).is_err());
    }

    #[test]
    fn rational_roots_of_factors() {
        let f = LaurentPoly::from_int_coeffs(&[(1, 1), (0, -1)]);
        assert_eq!(rational_roots(&f), vec![rat_int(1)]);

        let g = LaurentPoly::from_int_coeffs(&[(1, 2), (0, -1)]);
        assert_eq!(rational_roots(&g), vec![rat_frac(1, 2)]);

        let h = LaurentPoly::from_int_coeffs(&[(2, 1), (0, 1)]);
        assert!(rational_roots(&h).is_empty());

        // (t - 1)(2t - 1) shifted by a unit
        let k = (&f * &g).shift(-2);
        assert_eq!(rational_roots(&k), vec![rat_frac(1, 2), rat_int(1)]);
    }

    #[test]
    fn milnor_matches_direct_at_roots_and_generic_points() {
        let p = CWPresentation::new(
            vec!["a".into(), "b".into()],
            &["a b^2 a^-1 b^-1"],
            vec![1, 0],
        )
        .unwrap();
        let c = fox_complex(&p, "non-monic").unwrap();
        let data = homology(&c).unwrap();
        for s in [rat_int(1), rat_frac(1, 2), rat_int(3), rat_frac(-7, 3)] {
            let direct = twisted_dims(&c, &LocalSystemSpec::Rational(s.clone())).unwrap();
            let predicted = milnor_dims(&data, &s).unwrap();
            assert_eq!(direct, predicted, "mismatch at s = {s}");
        }
    }

    #[test]
    fn scan_on_skeleton() {
        let c = torus_skeleton(3, 2, &[1, 1, 1]).unwrap();
        let config = ScanConfig { samples: 12, seed: 7, ..Default::default() };
        let report = generic_vanishing_scan(&c, 2, &config).unwrap();
        assert_eq!(report.expected_middle, 1);
        assert!(report.generic_ok);
        assert!(report.milnor_ok);
        // the forced sample at s = 1 must be present and exceptional
        assert!(report
            .samples
            .iter()
            .any(|s| s.exceptional && s.s == rat_int(1)));
        // scans are reproducible for a fixed seed
        let again = generic_vanishing_scan(&c, 2, &config).unwrap();
        let ss: Vec<_> = report.samples.iter().map(|x| x.s.clone()).collect();
        let tt: Vec<_> = again.samples.iter().map(|x| x.s.clone()).collect();
        assert_eq!(ss, tt);
    }

    #[test]
    fn scan_rejects_bad_middle() {
        let c = circle(1).unwrap();
        assert!(generic_vanishing_scan(&c, 5, &ScanConfig::default()).is_err());
    }
}
