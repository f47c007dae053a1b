use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for any signed exponent.
pub fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(2d+1)!! = 1·3·5···(2d+1)`.
pub fn double_factorial_odd(d: u32) -> BigInt {
    (0..=d).fold(BigInt::one(), |acc, k| acc * BigInt::from(2 * k + 1))
}

/// True when the denominator is a power of two.
pub fn is_dyadic(r: &Rational) -> bool {
    let mut d = r.denom().clone();
    let two = BigInt::from(2);
    while d.is_even() {
        d /= &two;
    }
    d.is_one()
}

/// Canonical `num/den` rendering, denominator always present.
pub fn format_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n`, `-n`, `n/d` or `+n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    let r = Rational::new(num, den);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(format_fraction(&int(0)), "0/1");
        assert_eq!(format_fraction(&rat(-21, 524288)), "-21/524288");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["-1/16", "3/256", "0/1", "7/1"] {
            assert_eq!(format_fraction(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("+4/8").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn small_helpers() {
        assert_eq!(pow2(-3), rat(1, 8));
        assert_eq!(pow2(5), int(32));
        assert_eq!(double_factorial_odd(4), BigInt::from(945));
        assert_eq!(factorial(5), BigInt::from(120));
        assert!(is_dyadic(&rat(-21, 1 << 19)));
        assert!(!is_dyadic(&rat(1, 24)));
    }
}
