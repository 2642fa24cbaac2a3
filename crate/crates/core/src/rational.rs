//! Exact rational scalars.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Canonical exact fraction (gcd 1, positive denominator).
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn to_string(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"p/q"`, `"p"`, or a signed integer with optional whitespace.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Converts an integral rational to `i64`, if it fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.to_integer()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(frac(4, -6), frac(-2, 3));
        assert_eq!(to_string(&frac(4, -6)), "-2/3");
        assert_eq!(to_string(&int(5)), "5");
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse(" -2/3 "), Some(frac(-2, 3)));
        assert_eq!(parse("6/4"), Some(frac(3, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("1.5"), None);
    }
}
