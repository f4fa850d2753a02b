//! Laurent polynomials in one variable `t` over the exact rationals.
//!
//! The ring `Q[t, t^-1]` is Euclidean with respect to the exponent span
//! `max_exp - min_exp`, and its units are the single terms `c * t^k`.
//! Every nonzero element factors uniquely as a unit times a canonical
//! representative: minimal exponent zero, integer coefficients with
//! content one, and positive leading coefficient. All gcds, Smith normal
//! forms, and torsion invariants downstream are reported in that
//! canonical form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::complex::Complex64;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{rat_pow, Rat};
use crate::{Error, Result};

/// A unit of the Laurent ring: `coeff * t^exp` with `coeff != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentUnit {
    pub coeff: Rat,
    pub exp: i64,
}

impl LaurentUnit {
    pub fn one() -> Self {
        LaurentUnit { coeff: Rat::one(), exp: 0 }
    }

    pub fn inverse(&self) -> Self {
        LaurentUnit { coeff: self.coeff.recip(), exp: -self.exp }
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::term(self.coeff.clone(), self.exp)
    }
}

/// A Laurent polynomial with exact rational coefficients.
///
/// Internally a sparse map from exponent to nonzero coefficient; the
/// zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::term(Rat::one(), 0)
    }

    /// The single term `c * t^e` (zero if `c` is zero).
    pub fn term(c: Rat, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn monomial(e: i64) -> Self {
        LaurentPoly::term(Rat::one(), e)
    }

    /// Builds from `(exponent, integer coefficient)` pairs, summing repeats.
    pub fn from_int_coeffs(pairs: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in pairs {
            p.add_term(Rat::from_integer(BigInt::from(c)), e);
        }
        p
    }

    /// `t^w - 1`; zero when `w == 0`.
    pub fn t_pow_minus_one(w: i64) -> Self {
        LaurentPoly::monomial(w) - LaurentPoly::one()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self.coeffs.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Units are the single nonzero terms.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Euclidean size `max_exp - min_exp`; `None` for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => Some(b - a),
            _ => None,
        }
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.values().next_back()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, c: Rat, e: i64) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Writes `self = unit * primitive` with `primitive` canonical:
    /// minimal exponent zero, integer coefficients of content one, and
    /// positive leading coefficient. Fails on the zero polynomial.
    pub fn normalize(&self) -> Result<(LaurentUnit, LaurentPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroNormalForm);
        }
        let m = self.min_exp().unwrap();
        let mut den_lcm = BigInt::one();
        for c in self.coeffs.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.coeffs.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut scalar = Rat::new(num_gcd, den_lcm);
        let mut prim = LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e - m, c / &scalar))
                .collect(),
        };
        if prim.leading_coeff().unwrap().is_negative() {
            prim = -&prim;
            scalar = -scalar;
        }
        Ok((LaurentUnit { coeff: scalar, exp: m }, prim))
    }

    /// The canonical associate (primitive part of [`normalize`]); the
    /// zero polynomial maps to itself.
    pub fn canonical(&self) -> LaurentPoly {
        match self.normalize() {
            Ok((_, p)) => p,
            Err(_) => LaurentPoly::zero(),
        }
    }

    /// Euclidean division: `self = q * g + r` with `r == 0` or
    /// `span(r) < span(g)`.
    pub fn divrem(&self, g: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
        }
        let a = self.min_exp().unwrap();
        let b = g.min_exp().unwrap();
        let mut f = self.shift(-a);
        let gs = g.shift(-b);
        let gdeg = gs.max_exp().unwrap();
        let glead = gs.leading_coeff().unwrap().clone();
        let mut q = LaurentPoly::zero();
        while let Some(fdeg) = f.max_exp() {
            if fdeg < gdeg {
                break;
            }
            let c = f.leading_coeff().unwrap() / &glead;
            let e = fdeg - gdeg;
            q.add_term(c.clone(), e);
            let sub = gs.shift(e).scale(&c);
            f = &f - &sub;
        }
        Ok((q.shift(a - b), f.shift(a)))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Exact quotient, failing when the remainder is nonzero.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        let (q, r) = self.divrem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!("{self} is not divisible by {g}")))
        }
    }

    /// Canonical gcd via the Euclidean algorithm; `gcd(0, 0) == 0`.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.canonical()
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn evaluate(&self, s: &Rat) -> Result<Rat> {
        if s.is_zero() {
            return Err(Error::BadEvaluation(
                "Laurent polynomials are evaluated on the punctured line, s != 0".into(),
            ));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.coeffs {
            acc += c * rat_pow(s, *e)?;
        }
        Ok(acc)
    }

    /// Floating evaluation at a nonzero complex point.
    pub fn eval_complex(&self, s: Complex64) -> Result<Complex64> {
        if s.norm_sqr() == 0.0 {
            return Err(Error::BadEvaluation(
                "Laurent polynomials are evaluated on the punctured line, s != 0".into(),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.coeffs {
            let cf = Complex64::new(
                c.numer().to_f64().unwrap_or(f64::NAN),
                0.0,
            ) / Complex64::new(c.denom().to_f64().unwrap_or(f64::NAN), 0.0);
            acc += cf * s.powi(*e as i32);
        }
        Ok(acc)
    }

    /// Tests whether every irreducible factor of the canonical associate
    /// is cyclotomic, i.e. whether all roots are roots of unity.
    ///
    /// A nonzero product of cyclotomics is, up to a unit, monic with
    /// integer coefficients and constant term of absolute value one, and
    /// each cyclotomic factor `Phi_m` of a degree-`d` polynomial has
    /// `phi(m) <= d`, hence `m <= 2 d^2`. Those finitely many candidates
    /// are divided out exactly; the test passes when nothing remains.
    pub fn is_product_of_cyclotomics(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let p = self.canonical();
        if p.is_one() {
            return true;
        }
        if !p.leading_coeff().unwrap().is_one() {
            return false;
        }
        let c0 = p.coeff(0);
        if !c0.abs().is_one() {
            return false;
        }
        let d = p.span().unwrap();
        let mut rem = p;
        let mut cache = HashMap::new();
        let bound = 2 * (d as u64) * (d as u64) + 1;
        for m in 1..=bound {
            if euler_phi(m) > d as u64 {
                continue;
            }
            let phi_m = cyclotomic_cached(m, &mut cache);
            loop {
                match rem.divrem(&phi_m) {
                    Ok((q, r)) if r.is_zero() => rem = q,
                    _ => break,
                }
            }
            if rem.is_one() {
                return true;
            }
        }
        rem.is_one()
    }
}

/// Euler's totient by trial factorization.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut pk = 1;
            while m % p == 0 {
                m /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if m > 1 {
        phi *= m - 1;
    }
    phi
}

/// The `m`-th cyclotomic polynomial, computed by exact division of
/// `t^m - 1` by the cyclotomics of the proper divisors of `m`.
pub fn cyclotomic(m: u64) -> LaurentPoly {
    let mut cache = HashMap::new();
    cyclotomic_cached(m, &mut cache)
}

fn cyclotomic_cached(m: u64, cache: &mut HashMap<u64, LaurentPoly>) -> LaurentPoly {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut p = LaurentPoly::t_pow_minus_one(m as i64);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_cached(d, cache);
            p = p.exact_div(&phi_d).expect("t^m - 1 is divisible by Phi_d for d | m");
        }
    }
    cache.insert(m, p.clone());
    p
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(c.clone(), *e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(-c.clone(), *e);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: BTreeMap<String, String> = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.to_string(), crate::format_rat(c)))
            .collect();
        let mut map = serializer.serialize_map(Some(entries.len()))?;
        for (k, v) in entries {
            map.serialize_entry(&k, &v)?;
        }
        map.end()
    }
}

struct LaurentVisitor;

impl<'de> Visitor<'de> for LaurentVisitor {
    type Value = LaurentPoly;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a map from exponent strings to rational coefficient strings")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<LaurentPoly, A::Error> {
        let mut p = LaurentPoly::zero();
        while let Some((k, v)) = access.next_entry::<String, String>()? {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad exponent key {k:?}")))?;
            let c = crate::parse_rat(&v)
                .map_err(|err| serde::de::Error::custom(format!("bad coefficient {v:?}: {err}")))?;
            p.add_term(c, e);
        }
        Ok(p)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_map(LaurentVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_frac, rat_int};
    use proptest::prelude::*;

    fn p(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(pairs)
    }

    #[test]
    fn span_and_extremes() {
        let f = p(&[(-1, 2), (0, -2)]);
        assert_eq!(f.min_exp(), Some(-1));
        assert_eq!(f.max_exp(), Some(0));
        assert_eq!(f.span(), Some(1));
        assert_eq!(LaurentPoly::zero().span(), None);
    }

    #[test]
    fn normalize_canonical_form() {
        // -2 t^-1 + 2 = (2 t^-1) * (t - 1)
        let f = p(&[(-1, -2), (0, 2)]);
        let (u, prim) = f.normalize().unwrap();
        assert_eq!(prim, p(&[(1, 1), (0, -1)]));
        assert_eq!(u.coeff, rat_int(2));
        assert_eq!(u.exp, -1);
        assert_eq!(&u.to_poly() * &prim, f);

        // 2 t^-1 - 2 = (-2 t^-1) * (t - 1)
        let g = p(&[(-1, 2), (0, -2)]);
        let (u, prim) = g.normalize().unwrap();
        assert_eq!(prim, p(&[(1, 1), (0, -1)]));
        assert_eq!(u.coeff, rat_int(-2));
        assert_eq!(u.exp, -1);
        assert_eq!(&u.to_poly() * &prim, g);
    }

    #[test]
    fn normalize_clears_denominators() {
        // (3/4) t^2 - (1/2) t = (1/4) t * (3t - 2)
        let mut f = LaurentPoly::term(rat_frac(3, 4), 2);
        f = &f + &LaurentPoly::term(rat_frac(-1, 2), 1);
        let (u, prim) = f.normalize().unwrap();
        assert_eq!(prim, p(&[(1, 3), (0, -2)]));
        assert_eq!(u.coeff, rat_frac(1, 4));
        assert_eq!(u.exp, 1);
    }

    #[test]
    fn zero_has_no_normal_form() {
        assert!(LaurentPoly::zero().normalize().is_err());
    }

    #[test]
    fn divrem_examples() {
        let f = p(&[(3, 1), (0, -1)]);
        let g = p(&[(1, 1), (0, -1)]);
        let (q, r) = f.divrem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p(&[(2, 1), (1, 1), (0, 1)]));

        let (q, r) = g.divrem(&f).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, g);
    }

    #[test]
    fn gcd_examples() {
        let a = p(&[(2, 1), (0, -1)]);
        let b = p(&[(3, 1), (0, -1)]);
        assert_eq!(a.gcd(&b), p(&[(1, 1), (0, -1)]));

        // gcd is insensitive to units
        let a_shift = a.shift(-5).scale(&rat_frac(3, 7));
        assert_eq!(a_shift.gcd(&b), p(&[(1, 1), (0, -1)]));

        assert_eq!(a.gcd(&LaurentPoly::zero()), a.canonical());
        assert!(LaurentPoly::zero().gcd(&LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), p(&[(1, 1), (0, -1)]));
        assert_eq!(cyclotomic(2), p(&[(1, 1), (0, 1)]));
        assert_eq!(cyclotomic(3), p(&[(2, 1), (1, 1), (0, 1)]));
        assert_eq!(cyclotomic(4), p(&[(2, 1), (0, 1)]));
        assert_eq!(cyclotomic(6), p(&[(2, 1), (1, -1), (0, 1)]));
        assert_eq!(cyclotomic(12), p(&[(4, 1), (2, -1), (0, 1)]));
    }

    #[test]
    fn totient_table() {
        let expected = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), *e, "phi({})", i + 1);
        }
    }

    #[test]
    fn cyclotomic_products_pass() {
        let f = &(&cyclotomic(1) * &cyclotomic(1)) * &cyclotomic(2);
        assert!(f.is_product_of_cyclotomics());
        assert!(cyclotomic(5).is_product_of_cyclotomics());
        assert!(f.shift(-3).scale(&rat_frac(-5, 3)).is_product_of_cyclotomics());
        assert!(LaurentPoly::one().is_product_of_cyclotomics());
        assert!(LaurentPoly::monomial(4).is_product_of_cyclotomics());
    }

    #[test]
    fn non_cyclotomics_fail() {
        // all roots on the unit circle but not monic over the integers
        assert!(!p(&[(2, 2), (1, -3), (0, 2)]).is_product_of_cyclotomics());
        // golden-ratio roots off the unit circle
        assert!(!p(&[(2, 1), (1, -3), (0, 1)]).is_product_of_cyclotomics());
        assert!(!p(&[(1, 1), (0, -2)]).is_product_of_cyclotomics());
        assert!(!p(&[(1, 2), (0, -1)]).is_product_of_cyclotomics());
        assert!(!p(&[(2, 1), (1, 3), (0, 1)]).is_product_of_cyclotomics());
        assert!(!LaurentPoly::zero().is_product_of_cyclotomics());
    }

    #[test]
    fn mixed_products_fail() {
        let f = &cyclotomic(4) * &p(&[(1, 2), (0, -1)]);
        assert!(!f.is_product_of_cyclotomics());
    }

    #[test]
    fn evaluation() {
        let f = p(&[(2, 1), (0, -1)]);
        assert_eq!(f.evaluate(&rat_int(3)).unwrap(), rat_int(8));
        assert_eq!(f.evaluate(&rat_frac(1, 2)).unwrap(), rat_frac(-3, 4));
        assert!(f.evaluate(&rat_int(0)).is_err());

        let g = p(&[(-1, 1), (0, 1)]);
        assert_eq!(g.evaluate(&rat_int(2)).unwrap(), rat_frac(3, 2));

        let z = g.eval_complex(Complex64::new(0.0, 1.0)).unwrap();
        assert!((z - Complex64::new(1.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn display_round_trip_visual() {
        let f = p(&[(2, 1), (1, -3), (0, 2)]);
        assert_eq!(f.to_string(), "t^2 - 3*t + 2");
        assert_eq!(p(&[(-1, 2), (0, -2)]).to_string(), "-2 + 2*t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn serde_round_trip() {
        let f = p(&[(-2, 5), (0, -1), (3, 7)]);
        let json = serde_json::to_string(&f).unwrap();
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);

        let g: LaurentPoly = serde_json::from_str(r#"{"0": "-1", "1": "1/1"}"#).unwrap();
        assert_eq!(g, p(&[(1, 1), (0, -1)]));
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"x": "1"}"#).is_err());
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"0": "1/0"}"#).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-5i64..=5), (-9i64..=9)), 0..6)
            .prop_map(|pairs| LaurentPoly::from_int_coeffs(&pairs))
    }

    fn arb_nonzero() -> impl Strategy<Value = LaurentPoly> {
        arb_poly().prop_filter("nonzero", |f| !f.is_zero())
    }

    proptest! {
        #[test]
        fn prop_divrem_identity(f in arb_poly(), g in arb_nonzero()) {
            let (q, r) = f.divrem(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
            if !r.is_zero() {
                prop_assert!(r.span().unwrap() < g.span().unwrap());
            }
        }

        #[test]
        fn prop_normalize_identity(f in arb_nonzero()) {
            let (u, prim) = f.normalize().unwrap();
            prop_assert_eq!(&u.to_poly() * &prim, f);
            prop_assert_eq!(prim.min_exp(), Some(0));
            prop_assert!(prim.leading_coeff().unwrap().is_positive());
            let mut content = BigInt::zero();
            for (_, c) in prim.iter() {
                prop_assert!(c.is_integer());
                content = content.gcd(c.numer());
            }
            prop_assert!(content.is_one());
        }

        #[test]
        fn prop_gcd_divides(f in arb_nonzero(), g in arb_nonzero()) {
            let d = f.gcd(&g);
            prop_assert!(d.divides(&f));
            prop_assert!(d.divides(&g));
            prop_assert_eq!(f.gcd(&g), g.gcd(&f));
        }

        #[test]
        fn prop_gcd_scales(f in arb_nonzero(), g in arb_nonzero(), h in arb_nonzero()) {
            let lhs = (&f * &h).gcd(&(&g * &h));
            let rhs = (&f.gcd(&g) * &h).canonical();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn prop_eval_is_ring_hom(f in arb_poly(), g in arb_poly(), n in 1i64..7, d in 1i64..7) {
            let s = rat_frac(n, d);
            let fs = f.evaluate(&s).unwrap();
            let gs = g.evaluate(&s).unwrap();
            prop_assert_eq!((&f + &g).evaluate(&s).unwrap(), &fs + &gs);
            prop_assert_eq!((&f * &g).evaluate(&s).unwrap(), &fs * &gs);
        }

        #[test]
        fn prop_cyclotomic_products_detected(ms in prop::collection::vec(1u64..=12, 1..3), shift in -3i64..=3) {
            let mut f = LaurentPoly::one();
            for m in ms {
                f = &f * &cyclotomic(m);
            }
            prop_assert!(f.shift(shift).is_product_of_cyclotomics());
            let spoiled = &f * &LaurentPoly::from_int_coeffs(&[(1, 1), (0, -3)]);
            prop_assert!(!spoiled.is_product_of_cyclotomics());
        }

        #[test]
        fn prop_serde_round_trip(f in arb_poly()) {
            let json = serde_json::to_string(&f).unwrap();
            let back: LaurentPoly = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(f, back);
        }
    }
}
