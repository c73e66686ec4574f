//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"`. Decimal points are rejected.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}` (expected p/q)"));
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// `"p/q"` in lowest terms; integers print without a denominator.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
