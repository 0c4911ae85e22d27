//! Exact rational scalars.
//!
//! All arithmetic in this crate is exact: scalars are arbitrary-precision
//! rationals, never floats. This module fixes the textual format used by
//! parsers, printers, and the JSON layer: a rational is written `p/q` in
//! lowest terms with `q >= 1`, and a bare integer `p` is accepted on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar type used throughout the crate.
pub type Rat = BigRational;

/// Builds a rational from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer rational.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` (optionally signed) into an exact rational.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::Rational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `p/q` in lowest terms, `q >= 1`; integers render
/// bare. Lowest terms make the representation injective either way, and
/// `parse_rat` accepts both spellings.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `0 <= r <= 1`.
pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && r <= &Rat::one()
}

/// min(1, r)
pub fn cap_one(r: Rat) -> Rat {
    if r > Rat::one() {
        Rat::one()
    } else {
        r
    }
}

/// max(0, r)
pub fn floor_zero(r: Rat) -> Rat {
    if r.is_negative() {
        Rat::zero()
    } else {
        r
    }
}
