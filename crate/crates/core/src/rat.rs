//! Helpers for exact rational scalars.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

#[cfg(test)]
pub(crate) fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational canonically: integers as `"p"`, others as `"p/q"`
/// with a positive denominator and reduced terms.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact integer power, with negative exponents inverting.
pub(crate) fn rat_pow(base: &Rat, exp: i64) -> Result<Rat> {
    if exp == 0 {
        return Ok(Rat::one());
    }
    if base.is_zero() && exp < 0 {
        return Err(Error::BadEvaluation("0 raised to a negative power".into()));
    }
    let mut acc = Rat::one();
    let b = if exp < 0 { base.recip() } else { base.clone() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "2/3", "-7/4", "10/5"] {
            let r = parse_rat(s).unwrap();
            let t = parse_rat(&format_rat(&r)).unwrap();
            assert_eq!(r, t);
        }
        assert_eq!(format_rat(&parse_rat("10/5").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn integer_powers() {
        let half = rat_frac(1, 2);
        assert_eq!(rat_pow(&half, 3).unwrap(), rat_frac(1, 8));
        assert_eq!(rat_pow(&half, -2).unwrap(), rat_int(4));
        assert_eq!(rat_pow(&half, 0).unwrap(), rat_int(1));
        assert!(rat_pow(&Rat::zero(), -1).is_err());
    }
}
