//! Exact rational scalars: construction, parsing, and rendering.
//!
//! Everything in this crate computes over arbitrary-precision rationals; the
//! helpers here give tests and the I/O layer one blessed way to build and
//! print them. The canonical text form is `p` for integers and `p/q`
//! otherwise, always in lowest terms with a positive denominator (the
//! underlying `Ratio` type maintains that normal form).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar type used for every coefficient and pairing value.
pub type Rational = num_rational::BigRational;

/// An exact integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The exact fraction `num/den`. Panics if `den == 0`; intended for literals.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rational literal needs a nonzero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` (optional sign on either part) into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational {
        text: text.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(bad());
    }
    let (num_text, den_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num_text.parse().map_err(|_| bad())?;
    let den: BigInt = den_text.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational in the canonical text form: `p` when the denominator is
/// one, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when the rational is a (possibly negative) integer.
pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Floor of a rational as a big integer.
pub fn floor_int(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

/// Exact sign as -1, 0, or 1.
pub fn sign(value: &Rational) -> i32 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}
