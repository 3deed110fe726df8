//! Exact rational scalars and natural-number combinatorics.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn nat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_big(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Parses `"a/b"`, `"a"` or `"-a/b"`. Decimal and float notation is rejected.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Always `num/den`, also for integers.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

/// Nearest rational with denominator `2^bits`; used to feed sampled floats into exact solvers.
pub fn from_f64_dyadic(x: f64, bits: u32) -> Rational {
    let scale = (1u64 << bits) as f64;
    let num = (x * scale).round() as i64;
    Rational::new(BigInt::from(num), BigInt::from(1u64 << bits))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// n!/(n-k)!, zero when k > n.
pub fn falling(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (n - k + 1..=n).fold(BigUint::one(), |acc, j| acc * j)
}

pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of multisets of size k over n elements.
pub fn multichoose(n: u64, k: u64) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if n == 0 {
        return BigUint::zero();
    }
    binom(n + k - 1, k)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Truncated subtraction on rationals, `max(a - b, 0)`.
pub fn monus(a: &Rational, b: &Rational) -> Rational {
    if a > b {
        a - b
    } else {
        Rational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-2").unwrap(), int(-2));
        assert_eq!(parse(" 7 / 8 ").unwrap(), ratio(7, 8));
        assert!(parse("0.5").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&int(15)), "15/1");
        assert_eq!(to_fraction_string(&ratio(-6, 8)), "-3/4");
    }

    #[test]
    fn coefficients() {
        assert_eq!(binom(10, 2), BigUint::from(45u32));
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(multichoose(3, 3), BigUint::from(10u32));
        assert_eq!(multichoose(5, 0), BigUint::one());
        assert_eq!(falling(10, 2), BigUint::from(90u32));
        assert_eq!(factorial(5), BigUint::from(120u32));
    }

    #[test]
    fn binom_matches_factorials() {
        for n in 0..15u64 {
            for k in 0..=n {
                assert_eq!(binom(n, k), factorial(n) / (factorial(k) * factorial(n - k)));
            }
        }
    }
}
