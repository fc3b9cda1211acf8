//! Exact rational scalars.
//!
//! All sequence terms are [`Rat`] values. Text form is `p/q`, or `p` when the
//! denominator is 1, which is exactly what `Display` on [`BigRational`]
//! produces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `p/q` or `-p/q` (sign allowed here; callers that need
/// non-negative values use [`parse_nonneg`]).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['-', '+']) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

pub fn parse_nonneg(s: &str) -> Result<Rat> {
    let r = parse_rat(s)?;
    if r.is_negative() {
        return Err(Error::NegativeTerm(r.to_string()));
    }
    Ok(r)
}

/// `base^exp` by repeated squaring.
pub fn pow(base: &Rat, mut exp: u64) -> Rat {
    let mut acc = Rat::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}
