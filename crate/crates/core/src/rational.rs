//! Exact rational helpers on top of [`num_rational::BigRational`].
//!
//! Values print in canonical `p/q` form with `q > 0`; integers print without
//! the `/1` suffix, which is exactly what `BigRational`'s `Display` does.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};

pub use num_rational::BigRational as Rational;

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Parses `p`, `-p` or `p/q`. Whitespace around the tokens is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let trimmed: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    Rational::from_str(&trimmed).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// `base^exp` for any integer exponent; `0^negative` is a domain error.
pub fn powi(base: &Rational, exp: i64) -> Result<Rational> {
    if exp < 0 && base.is_zero() {
        return Err(domain("zero raised to a negative power"));
    }
    let magnitude = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    Ok(if exp < 0 {
        magnitude.recip()
    } else {
        magnitude
    })
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}
